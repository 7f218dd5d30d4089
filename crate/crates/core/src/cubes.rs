//! Subcubes of the Boolean hypercube and per-mode implicants.
//!
//! A cube over `n` variables is a `(mask, vals)` pair laid out like an
//! assignment index: variable `x_i` lives at bit `n - i`, so a point `k` is
//! a member iff `k & mask == vals`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::polyfunc::{Assignment, Mode, PolyExpr, PolyFunction, PolyGate, PolyValue, MAX_ARITY};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CubeError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("invalid cube {0:?}: expected a string over 0, 1, -")]
    Malformed(String),
    #[error("cube arity {0} outside 1..=16")]
    ArityRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube {
    n: u8,
    mask: u32,
    vals: u32,
}

impl Cube {
    pub fn new(n: usize, mask: u32, vals: u32) -> Result<Cube, CubeError> {
        if n == 0 || n > MAX_ARITY {
            return Err(CubeError::ArityRange(n));
        }
        let full = (1u32 << n) - 1;
        if mask & !full != 0 || vals & !mask != 0 {
            return Err(CubeError::Malformed(format!(
                "mask={mask:#b} vals={vals:#b}"
            )));
        }
        Ok(Cube {
            n: n as u8,
            mask,
            vals,
        })
    }

    pub(crate) const fn from_raw(n: usize, mask: u32, vals: u32) -> Cube {
        Cube {
            n: n as u8,
            mask,
            vals,
        }
    }

    /// The whole space `B^n`.
    pub fn full(n: usize) -> Cube {
        Cube::from_raw(n, 0, 0)
    }

    pub fn point(n: usize, index: u32) -> Cube {
        let mask = ((1u64 << n) - 1) as u32;
        Cube::from_raw(n, mask, index & mask)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn vals(&self) -> u32 {
        self.vals
    }

    fn var_bit(&self, var: usize) -> u32 {
        1 << (self.n() - var)
    }

    /// Number of free variables.
    pub fn dim(&self) -> usize {
        self.n() - self.mask.count_ones() as usize
    }

    pub fn point_count(&self) -> usize {
        1 << self.dim()
    }

    pub fn contains_point(&self, index: u32) -> bool {
        index & self.mask == self.vals
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Cube) -> bool {
        self.n == other.n && self.mask & !other.mask == 0 && other.vals & self.mask == self.vals
    }

    pub fn intersect(&self, other: &Cube) -> Result<Option<Cube>, CubeError> {
        if self.n != other.n {
            return Err(CubeError::ArityMismatch(self.n(), other.n()));
        }
        let common = self.mask & other.mask;
        if (self.vals ^ other.vals) & common != 0 {
            return Ok(None);
        }
        Ok(Some(Cube::from_raw(
            self.n(),
            self.mask | other.mask,
            self.vals | other.vals,
        )))
    }

    /// Member assignments in ascending index order.
    pub fn points(&self) -> impl Iterator<Item = Assignment> + '_ {
        let n = self.n();
        self.indices().map(move |k| Assignment::new_unchecked(n, k))
    }

    /// Member indices in ascending order.
    pub fn indices(&self) -> CubeIndices {
        let free = !self.mask & (((1u64 << self.n) - 1) as u32);
        CubeIndices {
            free,
            vals: self.vals,
            next: Some(0),
        }
    }

    /// AND/AND chain of one literal per bound variable in ascending variable
    /// order; `Const(1/1)` for the full cube.
    pub fn product_term(&self) -> PolyExpr {
        let lits = (1..=self.n())
            .filter(|&v| self.mask & self.var_bit(v) != 0)
            .map(|v| PolyExpr::Literal {
                var: v as u16,
                negated: self.vals & self.var_bit(v) == 0,
            });
        PolyExpr::fold(PolyGate::AND, lits).unwrap_or(PolyExpr::Const(PolyValue::ONE))
    }

    pub fn literal_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// The two halves obtained by binding free variable `var` to 0 and 1.
    pub fn split(&self, var: usize) -> Option<(Cube, Cube)> {
        let bit = self.var_bit(var);
        if var == 0 || var > self.n() || self.mask & bit != 0 {
            return None;
        }
        let mask = self.mask | bit;
        Some((
            Cube::from_raw(self.n(), mask, self.vals),
            Cube::from_raw(self.n(), mask, self.vals | bit),
        ))
    }

    /// The cube obtained by flipping bound variable `var`.
    pub fn neighbor(&self, var: usize) -> Option<Cube> {
        let bit = self.var_bit(var);
        if var == 0 || var > self.n() || self.mask & bit == 0 {
            return None;
        }
        Some(Cube::from_raw(self.n(), self.mask, self.vals ^ bit))
    }

    /// Union of the cube with its neighbor across `var`, which is a cube.
    pub fn merge(&self, var: usize) -> Option<Cube> {
        let bit = self.var_bit(var);
        if var == 0 || var > self.n() || self.mask & bit == 0 {
            return None;
        }
        Some(Cube::from_raw(self.n(), self.mask & !bit, self.vals & !bit))
    }

    /// Bound variables in ascending order.
    pub fn bound_vars(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n()).filter(|&v| self.mask & self.var_bit(v) != 0)
    }

    pub fn free_vars(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n()).filter(|&v| self.mask & self.var_bit(v) == 0)
    }

    /// Membership bitset over all `2^n` indices.
    pub fn to_bitset(&self) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(1 << self.n());
        for k in self.indices() {
            set.insert(k as usize);
        }
        set
    }
}

/// Ascending-order member indices of a cube.
pub struct CubeIndices {
    free: u32,
    vals: u32,
    next: Option<u32>,
}

impl Iterator for CubeIndices {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let sub = self.next?;
        // Next subset of `free` in increasing numeric order.
        let succ = sub.wrapping_sub(self.free) & self.free;
        self.next = (succ != 0).then_some(succ);
        Some(self.vals | sub)
    }
}

/// Canonical order: higher dimension first, then `(mask, vals)` ascending
/// with masks read in variable order (bit `i` = `x_{i+1}`), so cubes binding
/// `x_1` sort before cubes binding `x_2`.
impl Ord for Cube {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| other.dim().cmp(&self.dim()))
            .then_with(|| self.mask.reverse_bits().cmp(&other.mask.reverse_bits()))
            .then_with(|| self.vals.reverse_bits().cmp(&other.vals.reverse_bits()))
    }
}

impl PartialOrd for Cube {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 1..=self.n() {
            let bit = self.var_bit(v);
            let c = if self.mask & bit == 0 {
                '-'
            } else if self.vals & bit != 0 {
                '1'
            } else {
                '0'
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Cube {
    type Err = CubeError;

    fn from_str(s: &str) -> Result<Cube, CubeError> {
        let n = s.len();
        if n == 0 || n > MAX_ARITY {
            return Err(CubeError::Malformed(s.to_string()));
        }
        let (mut mask, mut vals) = (0u32, 0u32);
        for c in s.bytes() {
            mask <<= 1;
            vals <<= 1;
            match c {
                b'0' => mask |= 1,
                b'1' => {
                    mask |= 1;
                    vals |= 1;
                }
                b'-' => {}
                _ => return Err(CubeError::Malformed(s.to_string())),
            }
        }
        Ok(Cube::from_raw(n, mask, vals))
    }
}

impl Serialize for Cube {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Cube {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CubeClass {
    OneCube,
    ZeroCube,
    Mixed,
}

pub fn classify(f: &PolyFunction, c: &Cube, mode: Mode) -> Result<CubeClass, CubeError> {
    Ok(ModeView::new(f, *c, mode)?.class())
}

/// The values of one mode of `f` restricted to a cube.
#[derive(Debug, Clone)]
pub struct ModeView {
    pub cube: Cube,
    pub mode: Mode,
    /// `(point index, f_mode(point))` in ascending index order.
    pub values: Vec<(u32, bool)>,
}

impl ModeView {
    pub fn new(f: &PolyFunction, cube: Cube, mode: Mode) -> Result<ModeView, CubeError> {
        if f.n() != cube.n() {
            return Err(CubeError::ArityMismatch(f.n(), cube.n()));
        }
        let values = cube.indices().map(|k| (k, f.bit(k, mode))).collect();
        Ok(ModeView { cube, mode, values })
    }

    pub fn is_one_cube(&self) -> bool {
        self.values.iter().all(|&(_, b)| b)
    }

    pub fn is_zero_cube(&self) -> bool {
        self.values.iter().all(|&(_, b)| !b)
    }

    pub fn class(&self) -> CubeClass {
        if self.is_one_cube() {
            CubeClass::OneCube
        } else if self.is_zero_cube() {
            CubeClass::ZeroCube
        } else {
            CubeClass::Mixed
        }
    }
}

fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Decodes a base-3 cube id (digit per variable: 0, 1, or 2 = free; the
/// least significant digit is `x_n`).
fn cube_from_ternary(n: usize, mut id: usize) -> Cube {
    let (mut mask, mut vals) = (0u32, 0u32);
    for bit in 0..n {
        match id % 3 {
            0 => mask |= 1 << bit,
            1 => {
                mask |= 1 << bit;
                vals |= 1 << bit;
            }
            _ => {}
        }
        id /= 3;
    }
    Cube::from_raw(n, mask, vals)
}

/// All cubes contained in the on-set `on` (one entry per assignment index),
/// in canonical order.
pub fn implicants_of(n: usize, on: &[bool]) -> Vec<Cube> {
    assert_eq!(on.len(), 1 << n, "on-set length must be 2^n");
    let total = pow3(n);
    let mut is_one = vec![false; total];
    let mut out = Vec::new();
    for id in 0..total {
        let mut rest = id;
        let mut place = 1;
        let mut free_place = None;
        let mut index = 0u32;
        for bit in 0..n {
            match rest % 3 {
                1 => index |= 1 << bit,
                2 if free_place.is_none() => free_place = Some(place),
                _ => {}
            }
            rest /= 3;
            place *= 3;
        }
        let one = match free_place {
            None => on[index as usize],
            Some(p) => is_one[id - 2 * p] && is_one[id - p],
        };
        is_one[id] = one;
        if one {
            out.push(cube_from_ternary(n, id));
        }
    }
    out.sort();
    out
}

/// Maximal cubes of the on-set, by iterated pairwise merging of adjacent
/// cubes, in canonical order.
pub fn prime_implicants_of(n: usize, on: &[bool]) -> Vec<Cube> {
    assert_eq!(on.len(), 1 << n, "on-set length must be 2^n");
    let mut level: Vec<Cube> = (0..on.len() as u32)
        .filter(|&k| on[k as usize])
        .map(|k| Cube::point(n, k))
        .collect();
    let mut primes = Vec::new();
    while !level.is_empty() {
        let members: HashSet<Cube> = level.iter().copied().collect();
        let mut merged_away: HashSet<Cube> = HashSet::new();
        let mut next: HashSet<Cube> = HashSet::new();
        for c in &level {
            for v in c.bound_vars() {
                let other = c.neighbor(v).expect("bound variable");
                if members.contains(&other) {
                    merged_away.insert(*c);
                    next.insert(c.merge(v).expect("bound variable"));
                }
            }
        }
        primes.extend(level.iter().filter(|c| !merged_away.contains(c)));
        level = next.into_iter().collect();
    }
    primes.sort();
    primes
}

pub fn implicants(f: &PolyFunction, mode: Mode) -> Vec<Cube> {
    implicants_of(f.n(), &f.mode_view(mode))
}

pub fn prime_implicants(f: &PolyFunction, mode: Mode) -> Vec<Cube> {
    prime_implicants_of(f.n(), &f.mode_view(mode))
}

/// Maximal cubes on which `f` takes the constant value `value`.
pub fn constant_regions(f: &PolyFunction, value: PolyValue) -> Vec<Cube> {
    let on: Vec<bool> = f.cells().iter().map(|&v| v == value).collect();
    prime_implicants_of(f.n(), &on)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::polyfunc::{equivalent, table_of};

    fn cube(s: &str) -> Cube {
        s.parse().unwrap()
    }

    fn all_cubes(n: usize) -> Vec<Cube> {
        (0..pow3(n)).map(|id| cube_from_ternary(n, id)).collect()
    }

    fn arb_cube(n: usize) -> impl Strategy<Value = Cube> {
        (0..pow3(n)).prop_map(move |id| cube_from_ternary(n, id))
    }

    #[test]
    fn text_form() {
        let c = cube("-01-");
        assert_eq!(c.to_string(), "-01-");
        assert_eq!(c.dim(), 2);
        assert_eq!(c.point_count(), 4);
        assert!("-0x-".parse::<Cube>().is_err());
        assert!("".parse::<Cube>().is_err());
        assert!(Cube::new(2, 0b01, 0b10).is_err());
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(cube("1-").intersect(&cube("-1")).unwrap(), Some(cube("11")));
        assert_eq!(cube("0-").intersect(&cube("1-")).unwrap(), None);
        assert!(cube("0-").intersect(&cube("1--")).is_err());
    }

    #[test]
    fn points_examples() {
        let idx = |c: Cube| c.points().map(|a| a.to_string()).collect::<Vec<_>>();
        assert_eq!(idx(Cube::full(2)), ["00", "01", "10", "11"]);
        assert_eq!(idx(cube("1011")), ["1011"]);
        assert_eq!(idx(cube("-0-")), ["000", "001", "100", "101"]);
    }

    #[test]
    fn product_term_examples() {
        assert_eq!(cube("-01-").product_term().to_string(), "~x2 * x3");
        assert_eq!(
            Cube::full(3).product_term(),
            PolyExpr::Const(PolyValue::ONE)
        );
        assert_eq!(
            cube("0111").product_term().to_string(),
            "~x1 * x2 * x3 * x4"
        );
    }

    #[test]
    fn product_term_is_characteristic_function() {
        for n in 1..=4 {
            for c in all_cubes(n) {
                let t = table_of(&c.product_term(), n).unwrap();
                let expected = PolyFunction::from_fn(n, |k| {
                    if c.contains_point(k) {
                        PolyValue::ONE
                    } else {
                        PolyValue::ZERO
                    }
                })
                .unwrap();
                assert_eq!(t, expected, "{c}");
                assert!(equivalent(&c.product_term(), &expected).unwrap());
            }
        }
    }

    fn majority4() -> PolyFunction {
        PolyFunction::from_fn(4, |k| {
            let maj = k.count_ones() >= 3;
            PolyValue::new(k.count_ones() % 2 == 1, maj)
        })
        .unwrap()
    }

    #[test]
    fn classify_examples() {
        let f = majority4();
        assert_eq!(
            classify(&f, &cube("111-"), Mode::Two).unwrap(),
            CubeClass::OneCube
        );
        assert_eq!(
            classify(&f, &cube("010-"), Mode::One).unwrap(),
            CubeClass::Mixed
        );
        let zero = PolyFunction::constant(3, PolyValue::ZERO).unwrap();
        for c in all_cubes(3) {
            assert_eq!(classify(&zero, &c, Mode::One).unwrap(), CubeClass::ZeroCube);
        }
        assert!(classify(&zero, &cube("--"), Mode::One).is_err());
    }

    #[test]
    fn prime_implicant_examples() {
        let f = majority4();
        let p = prime_implicants(&f, Mode::Two);
        let text: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        assert_eq!(text, ["111-", "11-1", "1-11", "-111"]);

        let parity = prime_implicants(&f, Mode::One);
        assert_eq!(parity.len(), 8);
        assert!(parity.iter().all(|c| c.dim() == 0));

        let one = PolyFunction::constant(3, PolyValue::ONE).unwrap();
        assert_eq!(prime_implicants(&one, Mode::One), [Cube::full(3)]);
    }

    fn brute_primes(n: usize, on: &[bool]) -> Vec<Cube> {
        let ones: Vec<Cube> = all_cubes(n)
            .into_iter()
            .filter(|c| c.indices().all(|k| on[k as usize]))
            .collect();
        let mut primes: Vec<Cube> = ones
            .iter()
            .filter(|c| !ones.iter().any(|d| d != *c && d.contains(c)))
            .copied()
            .collect();
        primes.sort();
        primes
    }

    proptest! {
        #[test]
        fn intersect_laws(a in arb_cube(5), b in arb_cube(5), c in arb_cube(5)) {
            prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
            prop_assert_eq!(a.intersect(&a).unwrap(), Some(a));
            prop_assert_eq!(Cube::full(5).intersect(&a).unwrap(), Some(a));
            let ab_c = a.intersect(&b).unwrap().and_then(|x| x.intersect(&c).unwrap());
            let a_bc = b.intersect(&c).unwrap().and_then(|x| a.intersect(&x).unwrap());
            prop_assert_eq!(ab_c, a_bc);
            let inter: Vec<u32> = a.indices().filter(|&k| b.contains_point(k)).collect();
            let got: Vec<u32> = a.intersect(&b).unwrap().map(|x| x.indices().collect()).unwrap_or_default();
            prop_assert_eq!(inter, got);
        }

        #[test]
        fn points_match_membership(c in arb_cube(6)) {
            let pts: Vec<u32> = c.indices().collect();
            let expected: Vec<u32> = (0..64).filter(|&k| c.contains_point(k)).collect();
            prop_assert_eq!(pts.len(), c.point_count());
            prop_assert_eq!(pts, expected);
        }

        #[test]
        fn primes_match_brute_force(n in 1usize..=4, bits in any::<u16>()) {
            let on: Vec<bool> = (0..1 << n).map(|k| bits >> k & 1 == 1).collect();
            let primes = prime_implicants_of(n, &on);
            prop_assert_eq!(&primes, &brute_primes(n, &on));
            let imps = implicants_of(n, &on);
            let mut brute: Vec<Cube> = all_cubes(n)
                .into_iter()
                .filter(|c| c.indices().all(|k| on[k as usize]))
                .collect();
            brute.sort();
            prop_assert_eq!(&imps, &brute);
            for c in &imps {
                prop_assert!(primes.iter().any(|p| p.contains(c)));
            }
        }
    }
}
