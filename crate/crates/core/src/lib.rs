//! Equivariant structure constants of Peterson Schubert classes in type A,
//! two independent localization oracles, and the bike lock bijection for
//! the generalized Vandermonde identity.

pub mod bikelock;
pub mod cache;
pub mod error;
pub mod monomial;
pub mod oracle;
pub mod output;
pub mod restriction;
pub mod structure;
pub mod subset;
pub mod verify;

pub use bikelock::{
    lhs_count, rhs_count, verify_identity, BijectionReport, IdentityCertificate, IdentityParams,
    SMatrix, VMatrix,
};
pub use error::{Error, Result};
pub use monomial::{binomial, factorial, multinomial, TMonomial};
pub use oracle::{
    localize_product, root_values, subword_restriction, LocalizationSolver, RootValue,
};
pub use output::{Format, OutputRecord};
pub use restriction::{restrict, restrict_consecutive, self_restrict};
pub use structure::{
    b_c_consecutive, b_consecutive, b_general, b_ordinary, b_union_consecutive, expand_product,
    multi_class_coefficient, nested_conversion, nonvanishing, ordinary_consecutive,
    union_consecutive_terms, ChainTerm, ExpansionTable, MemoEntry, StructureConstantKey,
    StructureEngine,
};
pub use subset::{ConsecutiveBlock, ReducedWord, SubsetMask, MAX_RANK};
pub use verify::{SweepMode, VerifyReport};
