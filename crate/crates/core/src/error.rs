use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank n = {0} is out of range (need 1 <= n <= {max})", max = crate::subset::MAX_RANK)]
    RankOutOfRange(u32),

    #[error("index {index} is outside {{1, ..., {}}}", .n - 1)]
    IndexOutOfRange { index: u32, n: u32 },

    #[error("cannot parse subset {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("subsets live in different ambient ranks ({0} vs {1})")]
    RankMismatch(u32, u32),

    #[error("invalid block [{tail}, {head}]")]
    InvalidBlock { tail: u32, head: u32 },

    #[error("block [{inner_tail}, {inner_head}] is not contained in [{outer_tail}, {outer_head}]")]
    BlockNotContained {
        inner_tail: u32,
        inner_head: u32,
        outer_tail: u32,
        outer_head: u32,
    },

    #[error("{0} is not a consecutive set")]
    NotConsecutive(String),

    #[error("operand {0} must be nonempty")]
    EmptyOperand(&'static str),

    #[error("monomials t^{0} and t^{1} cannot be added")]
    MixedPowers(u32, u32),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("invalid identity parameters: {0}")]
    InvalidParams(String),

    #[error("matrix is not in the required set: {0}")]
    NotMember(String),

    #[error("cache file: {0}")]
    Cache(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
