//! Letter matrices of the two sides, bike lock moves, image
//! characterizations and the column correspondence.

use std::fmt;

use crate::bikelock::IdentityParams;
use crate::error::{Error, Result};

/// Widest matrix handled (`w + m + n`).
pub const MAX_WIDTH: usize = 16;

/// Entries of the top row of an S-matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
#[repr(u8)]
pub enum Top {
    O = 0,
    P,
    Q,
    R,
    S,
    T,
    Blank,
}

/// Entries of the bottom row of an S-matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
#[repr(u8)]
pub enum Bottom {
    U = 0,
    C,
    Blank,
}

/// Entries of a V-matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
#[repr(u8)]
pub enum Sym {
    Zero = 0,
    One,
    Star,
}

const TOPS: [Top; 7] = [Top::O, Top::P, Top::Q, Top::R, Top::S, Top::T, Top::Blank];
const BOTTOMS: [Bottom; 3] = [Bottom::U, Bottom::C, Bottom::Blank];
const SYMS: [Sym; 3] = [Sym::Zero, Sym::One, Sym::Star];

impl Top {
    fn letter(self) -> char {
        ['O', 'P', 'Q', 'R', 'S', 'T', '-'][self as usize]
    }
}

impl Bottom {
    fn letter(self) -> char {
        ['U', 'C', '-'][self as usize]
    }
}

impl Sym {
    fn letter(self) -> char {
        ['0', '1', '*'][self as usize]
    }
}

/// A `2 × c` matrix with top row over `{O,P,Q,R,S,T,-}` and bottom row over
/// `{U,C,-}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SMatrix {
    width: u8,
    top: [Top; MAX_WIDTH],
    bottom: [Bottom; MAX_WIDTH],
}

/// A `4 × c` matrix over `{0, 1, ★}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VMatrix {
    width: u8,
    rows: [[Sym; MAX_WIDTH]; 4],
}

fn check_width(width: usize) -> Result<()> {
    if width > MAX_WIDTH {
        return Err(Error::InvalidParams(format!(
            "matrix width {width} exceeds {MAX_WIDTH}"
        )));
    }
    Ok(())
}

/// Splits `"a b c; d e f"` into rows of single-character cells.
fn parse_rows(input: &str, rows: usize) -> Result<Vec<Vec<char>>> {
    let bad = |reason: String| Error::Parse {
        input: input.to_string(),
        reason,
    };
    let parsed: Vec<Vec<char>> = input
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|cell| {
                    let mut chars = cell.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => Ok(c),
                        _ => Err(bad(format!("cell {cell:?} is not a single symbol"))),
                    }
                })
                .collect::<Result<Vec<char>>>()
        })
        .collect::<Result<_>>()?;
    if parsed.len() != rows {
        return Err(bad(format!("expected {rows} rows, found {}", parsed.len())));
    }
    if parsed.iter().any(|row| row.len() != parsed[0].len()) {
        return Err(bad("rows have different lengths".into()));
    }
    check_width(parsed[0].len())?;
    Ok(parsed)
}

/// Rotates `row[k..width]` one step right, the last entry wrapping to `k`.
fn rotate<T: Copy>(row: &mut [T; MAX_WIDTH], k: usize, width: usize) {
    row[k..width].rotate_right(1);
}

impl SMatrix {
    pub fn new(top: &[Top], bottom: &[Bottom]) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::InvalidParams("rows have different lengths".into()));
        }
        check_width(top.len())?;
        let mut m = Self::blank(top.len());
        m.top[..top.len()].copy_from_slice(top);
        m.bottom[..bottom.len()].copy_from_slice(bottom);
        Ok(m)
    }

    fn blank(width: usize) -> Self {
        Self {
            width: width as u8,
            top: [Top::Blank; MAX_WIDTH],
            bottom: [Bottom::Blank; MAX_WIDTH],
        }
    }

    /// Parses `"R Q O -; C C U -"`.
    pub fn parse(input: &str) -> Result<Self> {
        let rows = parse_rows(input, 2)?;
        let lookup_top = |c: char| TOPS.iter().copied().find(|t| t.letter() == c);
        let lookup_bottom = |c: char| BOTTOMS.iter().copied().find(|b| b.letter() == c);
        let bad = |c: char| Error::Parse {
            input: input.to_string(),
            reason: format!("unexpected symbol {c:?}"),
        };
        let top = rows[0]
            .iter()
            .map(|&c| lookup_top(c).ok_or_else(|| bad(c)))
            .collect::<Result<Vec<_>>>()?;
        let bottom = rows[1]
            .iter()
            .map(|&c| lookup_bottom(c).ok_or_else(|| bad(c)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&top, &bottom)
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn top(&self) -> &[Top] {
        &self.top[..self.width()]
    }

    pub fn bottom(&self) -> &[Bottom] {
        &self.bottom[..self.width()]
    }

    /// Column `k` (0-based) packed as `top * 3 + bottom`, in `0..21`.
    fn column_code(&self, k: usize) -> u64 {
        self.top[k] as u64 * 3 + self.bottom[k] as u64
    }

    /// Injective packing, 5 bits per column.
    pub fn key(&self) -> u64 {
        (0..self.width()).fold(0, |acc, k| acc | self.column_code(k) << (5 * k))
    }

    /// The move `BL⁻_k` for 1-based column `k`.
    pub fn bl_minus_step(&mut self, k: usize) {
        let (col, width) = (k - 1, self.width());
        if self.top[col] == Top::O {
            rotate(&mut self.bottom, col, width);
        } else if self.bottom[col] == Bottom::U {
            rotate(&mut self.top, col, width);
        }
    }

    /// `BL⁻ = BL⁻_c ∘ ... ∘ BL⁻_1`.
    pub fn bl_minus(&self) -> Self {
        let mut out = *self;
        for k in 1..=self.width() {
            out.bl_minus_step(k);
        }
        out
    }

    /// Removes placeholders from each row and pads on the right; inverts
    /// [`SMatrix::bl_minus`] on its image.
    pub fn left_align(&self) -> Self {
        let mut out = Self::blank(self.width());
        for (slot, &t) in out
            .top
            .iter_mut()
            .zip(self.top().iter().filter(|&&t| t != Top::Blank))
        {
            *slot = t;
        }
        for (slot, &b) in out
            .bottom
            .iter_mut()
            .zip(self.bottom().iter().filter(|&&b| b != Bottom::Blank))
        {
            *slot = b;
        }
        out
    }

    pub fn top_count(&self, letter: Top) -> usize {
        self.top().iter().filter(|&&t| t == letter).count()
    }

    pub fn bottom_count(&self, letter: Bottom) -> usize {
        self.bottom().iter().filter(|&&b| b == letter).count()
    }
}

impl fmt::Display for SMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top: Vec<String> = self.top().iter().map(|t| t.letter().to_string()).collect();
        let bottom: Vec<String> = self
            .bottom()
            .iter()
            .map(|b| b.letter().to_string())
            .collect();
        write!(f, "{}; {}", top.join(" "), bottom.join(" "))
    }
}

impl VMatrix {
    pub fn new(rows: [&[Sym]; 4]) -> Result<Self> {
        let width = rows[0].len();
        if rows.iter().any(|row| row.len() != width) {
            return Err(Error::InvalidParams("rows have different lengths".into()));
        }
        check_width(width)?;
        let mut m = Self::blank(width);
        for (dst, src) in m.rows.iter_mut().zip(rows) {
            dst[..width].copy_from_slice(src);
        }
        Ok(m)
    }

    fn blank(width: usize) -> Self {
        Self {
            width: width as u8,
            rows: [[Sym::Star; MAX_WIDTH]; 4],
        }
    }

    /// Parses `"0 1 *; 0 0 *; 1 1 *; 0 * *"`; `★` is accepted for `*`.
    pub fn parse(input: &str) -> Result<Self> {
        let rows = parse_rows(input, 4)?;
        let mut cells = [[Sym::Star; MAX_WIDTH]; 4];
        for (dst, row) in cells.iter_mut().zip(&rows) {
            for (slot, &c) in dst.iter_mut().zip(row) {
                *slot = match c {
                    '0' => Sym::Zero,
                    '1' => Sym::One,
                    '*' | '★' => Sym::Star,
                    other => {
                        return Err(Error::Parse {
                            input: input.to_string(),
                            reason: format!("unexpected symbol {other:?}"),
                        })
                    }
                };
            }
        }
        let width = rows[0].len();
        Self::new([
            &cells[0][..width],
            &cells[1][..width],
            &cells[2][..width],
            &cells[3][..width],
        ])
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    /// Row `r` (0-based).
    pub fn row(&self, r: usize) -> &[Sym] {
        &self.rows[r][..self.width()]
    }

    /// Column `k` (0-based) packed base 3 with row 1 least significant.
    fn column_code(&self, k: usize) -> usize {
        (0..4)
            .rev()
            .fold(0, |acc, r| acc * 3 + self.rows[r][k] as usize)
    }

    /// Injective packing, 7 bits per column.
    pub fn key(&self) -> u128 {
        (0..self.width()).fold(0, |acc, k| acc | (self.column_code(k) as u128) << (7 * k))
    }

    /// The move `BL★_k` for 1-based column `k`.
    pub fn bl_star_step(&mut self, k: usize) {
        let (col, width) = (k - 1, self.width());
        let rows = STAR_ROWS[self.column_code(col)];
        for r in 0..4 {
            if rows & (1 << r) != 0 {
                rotate(&mut self.rows[r], col, width);
            }
        }
    }

    /// `BL★ = BL★_c ∘ ... ∘ BL★_1`.
    pub fn bl_star(&self) -> Self {
        let mut out = *self;
        for k in 1..=self.width() {
            out.bl_star_step(k);
        }
        out
    }

    /// Removes `★`s from each row and pads on the right; inverts
    /// [`VMatrix::bl_star`] on its image.
    pub fn left_align(&self) -> Self {
        let mut out = Self::blank(self.width());
        for r in 0..4 {
            let numbers = self.row(r).iter().filter(|&&s| s != Sym::Star);
            for (slot, &s) in out.rows[r].iter_mut().zip(numbers) {
                *slot = s;
            }
        }
        out
    }

    pub fn count(&self, r: usize, sym: Sym) -> usize {
        self.row(r).iter().filter(|&&s| s == sym).count()
    }
}

impl fmt::Display for VMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..4)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|s| s.letter().to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}

const fn v_code(col: [Sym; 4]) -> usize {
    col[0] as usize + 3 * (col[1] as usize + 3 * (col[2] as usize + 3 * col[3] as usize))
}

const fn col(s: &[u8; 4]) -> [Sym; 4] {
    let mut out = [Sym::Zero; 4];
    let mut i = 0;
    while i < 4 {
        out[i] = match s[i] {
            b'0' => Sym::Zero,
            b'1' => Sym::One,
            _ => Sym::Star,
        };
        i += 1;
    }
    out
}

/// Row sets (bit `r` for row `r + 1`) moved by `BL★_k`, indexed by the
/// packed `k`th column.
static STAR_ROWS: [u8; 81] = {
    const TABLE: [(&[u8; 4], u8); 19] = [
        (b"0110", 0b0001),
        (b"1110", 0b0001),
        (b"1*00", 0b0001),
        (b"1001", 0b0010),
        (b"1101", 0b0010),
        (b"*100", 0b0010),
        (b"0101", 0b0100),
        (b"0111", 0b0100),
        (b"001*", 0b0100),
        (b"1010", 0b1000),
        (b"1011", 0b1000),
        (b"00*1", 0b1000),
        (b"1000", 0b0011),
        (b"0100", 0b0011),
        (b"1100", 0b0011),
        (b"0000", 0b1100),
        (b"0010", 0b1100),
        (b"0001", 0b1100),
        (b"0011", 0b1100),
    ];
    let mut out = [0u8; 81];
    let mut i = 0;
    while i < TABLE.len() {
        out[v_code(col(TABLE[i].0))] |= TABLE[i].1;
        i += 1;
    }
    out
};

/// The seven column types of the images, in corresponding order on the two
/// sides.
pub const S_TYPES: [(Top, Bottom); 7] = [
    (Top::T, Bottom::C),
    (Top::S, Bottom::C),
    (Top::P, Bottom::C),
    (Top::Q, Bottom::C),
    (Top::Blank, Bottom::U),
    (Top::O, Bottom::Blank),
    (Top::R, Bottom::C),
];

pub const V_TYPES: [[Sym; 4]; 7] = [
    col(b"*110"),
    col(b"1*01"),
    col(b"01*1"),
    col(b"101*"),
    col(b"**00"),
    col(b"00**"),
    col(b"1111"),
];

/// Index of the type `(-;U)` / `★★00`; it may not be followed by type
/// [`FORBIDDEN_NEXT`].
const FORBIDDEN_FIRST: usize = 4;
/// Index of the type `(O;-)` / `00★★`.
const FORBIDDEN_NEXT: usize = 5;

fn s_type_of(m: &SMatrix, k: usize) -> Option<usize> {
    S_TYPES
        .iter()
        .position(|&(t, b)| m.top[k] == t && m.bottom[k] == b)
}

fn v_type_lookup() -> &'static [Option<u8>; 81] {
    static TABLE: std::sync::OnceLock<[Option<u8>; 81]> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [None; 81];
        for (i, c) in V_TYPES.iter().enumerate() {
            out[v_code(*c)] = Some(i as u8);
        }
        out
    })
}

fn v_type_of(m: &VMatrix, k: usize) -> Option<usize> {
    v_type_lookup()[m.column_code(k)].map(usize::from)
}

fn types_admissible(types: impl Iterator<Item = Option<usize>>) -> Option<[usize; 7]> {
    let mut counts = [0usize; 7];
    let mut prev = None;
    for ty in types {
        let ty = ty?;
        if prev == Some(FORBIDDEN_FIRST) && ty == FORBIDDEN_NEXT {
            return None;
        }
        counts[ty] += 1;
        prev = Some(ty);
    }
    Some(counts)
}

/// Letter counts of an element of the S-side for the stratum `(i, j)`, as
/// `(top counts in Top order, bottom counts in Bottom order)`.
pub fn s_counts(p: &IdentityParams, i: i64, j: i64) -> ([i64; 7], [i64; 3]) {
    let IdentityParams { m, n, w, x, y, z } = *p;
    (
        [m - i, i, y - x + i, x - i - j, z - x + j, j, n - j],
        [n - j, w + i + j, m - i],
    )
}

/// Counts of `0`, `1`, `★` in each row of an element of the V-side.
pub fn v_counts(p: &IdentityParams) -> [[i64; 3]; 4] {
    let IdentityParams { m, n, w, x, y, z } = *p;
    [
        [m, w, n],
        [y - x + m, x, z - x + n],
        [z - x + n, y, m],
        [n, z, y - x + m],
    ]
}

/// Membership in the image of `BL⁻`: only the seven column types, no
/// `(-;U)` directly followed by `(O;-)`, and letter counts of some stratum.
pub fn characterize_s_image(p: &IdentityParams, m: &SMatrix) -> bool {
    if m.width() as i64 != p.width() {
        return false;
    }
    if types_admissible((0..m.width()).map(|k| s_type_of(m, k))).is_none() {
        return false;
    }
    let top: Vec<i64> = TOPS.iter().map(|&t| m.top_count(t) as i64).collect();
    let bottom: Vec<i64> = BOTTOMS.iter().map(|&b| m.bottom_count(b) as i64).collect();
    let (i, j) = (top[Top::P as usize], top[Top::T as usize]);
    if i > p.m || j > p.n {
        return false;
    }
    let (want_top, want_bottom) = s_counts(p, i, j);
    top == want_top && bottom == want_bottom
}

/// Membership in the image of `BL★`: only the seven column types, no
/// `★★00` directly followed by `00★★`, and the row counts of the V-side.
pub fn characterize_v_image(p: &IdentityParams, m: &VMatrix) -> bool {
    if m.width() as i64 != p.width() {
        return false;
    }
    if types_admissible((0..m.width()).map(|k| v_type_of(m, k))).is_none() {
        return false;
    }
    let want = v_counts(p);
    (0..4).all(|r| {
        SYMS.iter()
            .all(|&s| m.count(r, s) as i64 == want[r][s as usize])
    })
}

/// Column-by-column substitution of the seven V types by the seven S types.
/// Returns `None` if some column is not one of the seven types.
pub(crate) fn correspond_columns(m: &VMatrix) -> Option<SMatrix> {
    let mut out = SMatrix::blank(m.width());
    for k in 0..m.width() {
        let (t, b) = S_TYPES[v_type_of(m, k)?];
        out.top[k] = t;
        out.bottom[k] = b;
    }
    Some(out)
}

/// The correspondence from the image of `BL★` to the image of `BL⁻`.
pub fn column_correspondence(p: &IdentityParams, m: &VMatrix) -> Result<SMatrix> {
    if !characterize_v_image(p, m) {
        return Err(Error::NotMember(m.to_string()));
    }
    Ok(correspond_columns(m).expect("member columns are typed"))
}

/// Calls `f` with every arrangement of the multiset `counts` (symbol `s`
/// appearing `counts[s]` times), in lexicographic order.
pub(crate) fn for_each_arrangement(counts: &[usize], f: &mut impl FnMut(&[u8])) {
    let total: usize = counts.iter().sum();
    let mut remaining = counts.to_vec();
    let mut buf = vec![0u8; total];
    arrange(&mut remaining, &mut buf, 0, None, f);
}

/// Recursive step of [`for_each_arrangement`]; with `forbid = Some((a, b))`
/// sequences containing `a` directly followed by `b` are skipped.
fn arrange(
    remaining: &mut [usize],
    buf: &mut [u8],
    pos: usize,
    forbid: Option<(u8, u8)>,
    f: &mut impl FnMut(&[u8]),
) {
    if pos == buf.len() {
        f(buf);
        return;
    }
    for s in 0..remaining.len() {
        if remaining[s] == 0 {
            continue;
        }
        if let Some((first, next)) = forbid {
            if pos > 0 && buf[pos - 1] == first && s as u8 == next {
                continue;
            }
        }
        remaining[s] -= 1;
        buf[pos] = s as u8;
        arrange(remaining, buf, pos + 1, forbid, f);
        remaining[s] += 1;
    }
}

fn nonnegative<const N: usize>(counts: [i64; N]) -> Option<[usize; N]> {
    if counts.iter().any(|&c| c < 0) {
        return None;
    }
    Some(counts.map(|c| c as usize))
}

/// Calls `f` with every element of the S-side, stratum by stratum.
pub fn for_each_s(p: &IdentityParams, mut f: impl FnMut(&SMatrix)) {
    let Ok(width) = usize::try_from(p.width()) else {
        return;
    };
    if width > MAX_WIDTH {
        return;
    }
    let mut m = SMatrix::blank(width);
    for i in 0..=p.m {
        for j in 0..=p.n {
            let (top, bottom) = s_counts(p, i, j);
            let (Some(top), Some(bottom)) = (nonnegative(top), nonnegative(bottom)) else {
                continue;
            };
            let mut bottoms: Vec<[Bottom; MAX_WIDTH]> = Vec::new();
            for_each_arrangement(&bottom[..2], &mut |seq| {
                let mut row = [Bottom::Blank; MAX_WIDTH];
                for (slot, &s) in row.iter_mut().zip(seq) {
                    *slot = BOTTOMS[s as usize];
                }
                bottoms.push(row);
            });
            for_each_arrangement(&top[..6], &mut |seq| {
                for (k, slot) in m.top[..width].iter_mut().enumerate() {
                    *slot = seq.get(k).map_or(Top::Blank, |&s| TOPS[s as usize]);
                }
                for row in &bottoms {
                    m.bottom = *row;
                    f(&m);
                }
            });
        }
    }
}

/// Calls `f` with every element of the V-side.
pub fn for_each_v(p: &IdentityParams, mut f: impl FnMut(&VMatrix)) {
    let Ok(width) = usize::try_from(p.width()) else {
        return;
    };
    if width > MAX_WIDTH {
        return;
    }
    let Some(counts) = v_counts(p)
        .into_iter()
        .map(nonnegative)
        .collect::<Option<Vec<[usize; 3]>>>()
    else {
        return;
    };
    let rows: Vec<Vec<[Sym; MAX_WIDTH]>> = counts
        .iter()
        .map(|c| {
            let mut out = Vec::new();
            for_each_arrangement(&c[..2], &mut |seq| {
                let mut row = [Sym::Star; MAX_WIDTH];
                for (slot, &s) in row.iter_mut().zip(seq) {
                    *slot = SYMS[s as usize];
                }
                out.push(row);
            });
            out
        })
        .collect();
    let mut m = VMatrix::blank(width);
    for r0 in &rows[0] {
        m.rows[0] = *r0;
        for r1 in &rows[1] {
            m.rows[1] = *r1;
            for r2 in &rows[2] {
                m.rows[2] = *r2;
                for r3 in &rows[3] {
                    m.rows[3] = *r3;
                    f(&m);
                }
            }
        }
    }
}

pub fn enumerate_s(p: &IdentityParams) -> Vec<SMatrix> {
    let mut out = Vec::new();
    for_each_s(p, |m| out.push(*m));
    out
}

pub fn enumerate_v(p: &IdentityParams) -> Vec<VMatrix> {
    let mut out = Vec::new();
    for_each_v(p, |m| out.push(*m));
    out
}

/// Every vector of seven type counts summing to `width`, in lexicographic
/// order.
fn type_count_vectors(width: usize) -> Vec<[usize; 7]> {
    fn go(width: usize, slot: usize, acc: &mut [usize; 7], out: &mut Vec<[usize; 7]>) {
        if slot == 6 {
            acc[6] = width;
            out.push(*acc);
            return;
        }
        for c in 0..=width {
            acc[slot] = c;
            go(width - c, slot + 1, acc, out);
        }
    }
    let mut out = Vec::new();
    go(width, 0, &mut [0; 7], &mut out);
    out
}

/// Calls `f` with every type sequence (indices into [`S_TYPES`] /
/// [`V_TYPES`]) whose type counts satisfy `accept`, skipping forbidden
/// adjacent pairs.
fn for_each_typed_sequence(
    width: usize,
    accept: impl Fn(&[usize; 7]) -> bool,
    f: &mut impl FnMut(&[u8]),
) {
    for counts in type_count_vectors(width) {
        if !accept(&counts) {
            continue;
        }
        let mut remaining = counts.to_vec();
        let mut buf = vec![0u8; width];
        arrange(
            &mut remaining,
            &mut buf,
            0,
            Some((FORBIDDEN_FIRST as u8, FORBIDDEN_NEXT as u8)),
            f,
        );
    }
}

/// Every matrix satisfying [`characterize_s_image`], generated directly
/// from the column types.
pub fn for_each_characterized_s(p: &IdentityParams, mut f: impl FnMut(&SMatrix)) {
    let Ok(width) = usize::try_from(p.width()) else {
        return;
    };
    if width > MAX_WIDTH {
        return;
    }
    let accept = |counts: &[usize; 7]| {
        let mut top = [0i64; 7];
        let mut bottom = [0i64; 3];
        for (ty, &c) in counts.iter().enumerate() {
            let (t, b) = S_TYPES[ty];
            top[t as usize] += c as i64;
            bottom[b as usize] += c as i64;
        }
        let (i, j) = (top[Top::P as usize], top[Top::T as usize]);
        i <= p.m && j <= p.n && s_counts(p, i, j) == (top, bottom)
    };
    let mut m = SMatrix::blank(width);
    for_each_typed_sequence(width, accept, &mut |seq| {
        for (k, &ty) in seq.iter().enumerate() {
            let (t, b) = S_TYPES[ty as usize];
            m.top[k] = t;
            m.bottom[k] = b;
        }
        f(&m);
    });
}

/// Every matrix satisfying [`characterize_v_image`], generated directly
/// from the column types.
pub fn for_each_characterized_v(p: &IdentityParams, mut f: impl FnMut(&VMatrix)) {
    let Ok(width) = usize::try_from(p.width()) else {
        return;
    };
    if width > MAX_WIDTH {
        return;
    }
    let want = v_counts(p);
    let accept = |counts: &[usize; 7]| {
        let mut got = [[0i64; 3]; 4];
        for (ty, &c) in counts.iter().enumerate() {
            for (r, &s) in V_TYPES[ty].iter().enumerate() {
                got[r][s as usize] += c as i64;
            }
        }
        got == want
    };
    let mut m = VMatrix::blank(width);
    for_each_typed_sequence(width, accept, &mut |seq| {
        for (k, &ty) in seq.iter().enumerate() {
            for (row, &sym) in m.rows.iter_mut().zip(&V_TYPES[ty as usize]) {
                row[k] = sym;
            }
        }
        f(&m);
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: i64, n: i64, w: i64, x: i64, y: i64, z: i64) -> IdentityParams {
        IdentityParams::new(m, n, w, x, y, z).unwrap()
    }

    #[test]
    fn worked_s_example() {
        let s = SMatrix::parse("R Q O S P R T R -; C C U C C C C C -").unwrap();
        let out = s.bl_minus();
        assert_eq!(
            out,
            SMatrix::parse("R Q O - S P R T R; C C - U C C C C C").unwrap()
        );
        assert_eq!(out.left_align(), s);
        assert_eq!(out.to_string(), "R Q O - S P R T R; C C - U C C C C C");
    }

    #[test]
    fn worked_v_example() {
        let v = VMatrix::parse("0 1 0 * *; 0 0 0 * *; 0 1 0 * *; 0 0 * * *").unwrap();
        let out = v.bl_star();
        let want = VMatrix::parse("0 ★ 1 0 ★; 0 ★ 0 0 ★; ★ 0 1 ★ 0; ★ 0 ★ ★ 0").unwrap();
        assert_eq!(out, want);
        assert_eq!(out.left_align(), v);
        let p = params(2, 2, 1, 0, 1, 0);
        assert!(characterize_v_image(&p, &out));
        let s = column_correspondence(&p, &out).unwrap();
        assert!(characterize_s_image(&p, &s));
    }

    #[test]
    fn moves_without_triggers_are_identity() {
        let s = SMatrix::parse("R Q S -; C C C -").unwrap();
        assert_eq!(s.bl_minus(), s);
        let v = VMatrix::parse("* *; * *; * *; * *").unwrap();
        assert_eq!(v.bl_star(), v);
    }

    #[test]
    fn star_table_lookup() {
        assert_eq!(STAR_ROWS.iter().filter(|&&r| r != 0).count(), 19);
        assert_eq!(STAR_ROWS[v_code(col(b"1*00"))], 0b0001);
        assert_eq!(STAR_ROWS[v_code(col(b"0011"))], 0b1100);
        assert_eq!(STAR_ROWS[v_code(col(b"1111"))], 0);
    }

    #[test]
    fn characterization_rejections() {
        let p = params(1, 1, 0, 0, 0, 0);
        // (-;U)(O;-) is the forbidden adjacent pair; the reverse order is fine.
        assert!(!characterize_s_image(
            &p,
            &SMatrix::parse("- O; U -").unwrap()
        ));
        assert!(characterize_s_image(
            &p,
            &SMatrix::parse("O -; - U").unwrap()
        ));
        assert!(!characterize_s_image(
            &p,
            &SMatrix::parse("O -; C U").unwrap()
        ));
        assert!(!characterize_v_image(
            &p,
            &VMatrix::parse("* 0; * 0; 0 *; 0 *").unwrap()
        ));
        assert!(characterize_v_image(
            &p,
            &VMatrix::parse("0 *; 0 *; * 0; * 0").unwrap()
        ));
        let all_ones = params(0, 0, 3, 3, 3, 3);
        assert!(characterize_v_image(
            &all_ones,
            &VMatrix::parse("1 1 1; 1 1 1; 1 1 1; 1 1 1").unwrap()
        ));
    }

    #[test]
    fn correspondence_rejects_non_members() {
        let p = params(1, 1, 0, 0, 0, 0);
        assert!(column_correspondence(&p, &VMatrix::parse("* 0; * 0; 0 *; 0 *").unwrap()).is_err());
        let s = column_correspondence(&p, &VMatrix::parse("1 1; 1 1; 1 1; 1 1").unwrap());
        assert!(s.is_err());
        let one = params(0, 0, 1, 1, 1, 1);
        let s = column_correspondence(&one, &VMatrix::parse("1; 1; 1; 1").unwrap()).unwrap();
        assert_eq!(s, SMatrix::parse("R; C").unwrap());
    }

    #[test]
    fn small_enumerations() {
        let p = params(1, 0, 1, 1, 1, 1);
        assert_eq!(enumerate_s(&p).len(), 4);
        assert_eq!(enumerate_v(&p).len(), 4);
        let empty = params(0, 0, 0, 0, 0, 0);
        assert_eq!(enumerate_s(&empty).len(), 1);
        assert_eq!(enumerate_v(&empty).len(), 1);
        assert_eq!(enumerate_s(&empty)[0].width(), 0);
        let negative = params(0, 0, 1, -1, 0, 0);
        assert!(enumerate_s(&negative).is_empty());
        assert!(enumerate_v(&negative).is_empty());
    }

    /// Brute force over all 2 × c and 4 × c matrices at tiny widths.
    #[test]
    fn characterized_generators_match_predicates() {
        for p in [
            params(1, 1, 0, 0, 0, 0),
            params(1, 1, 1, 1, 1, 1),
            params(2, 0, 1, 0, 1, 0),
        ] {
            let width = p.width() as usize;
            let mut brute_s = Vec::new();
            let total_s = 21usize.pow(width as u32);
            for code in 0..total_s {
                let mut rest = code;
                let mut top = Vec::new();
                let mut bottom = Vec::new();
                for _ in 0..width {
                    top.push(TOPS[(rest % 21) / 3]);
                    bottom.push(BOTTOMS[rest % 3]);
                    rest /= 21;
                }
                let m = SMatrix::new(&top, &bottom).unwrap();
                if characterize_s_image(&p, &m) {
                    brute_s.push(m.key());
                }
            }
            let mut generated = Vec::new();
            for_each_characterized_s(&p, |m| generated.push(m.key()));
            brute_s.sort_unstable();
            generated.sort_unstable();
            assert_eq!(brute_s, generated);

            let mut brute_v = Vec::new();
            for code in 0..81usize.pow(width as u32) {
                let mut rest = code;
                let mut rows = vec![Vec::new(); 4];
                for _ in 0..width {
                    let mut c = rest % 81;
                    for row in rows.iter_mut() {
                        row.push(SYMS[c % 3]);
                        c /= 3;
                    }
                    rest /= 81;
                }
                let m = VMatrix::new([&rows[0], &rows[1], &rows[2], &rows[3]]).unwrap();
                if characterize_v_image(&p, &m) {
                    brute_v.push(m.key());
                }
            }
            let mut generated = Vec::new();
            for_each_characterized_v(&p, |m| generated.push(m.key()));
            brute_v.sort_unstable();
            generated.sort_unstable();
            assert_eq!(brute_v, generated);
        }
    }
}
