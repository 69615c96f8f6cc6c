//! The space-time algebra Cl(3,1).
//!
//! Multivectors carry 16 real coefficients over the canonical blade basis
//!
//! ```text
//! 1, e_t, e_1, e_2, e_3, e_12, e_13, e_23, e_t1, e_t2, e_t3, i_3, e_t12, e_t13, e_t23, i_st
//! ```
//!
//! with `e_t² = -1`, `e_k² = +1` (k = 1, 2, 3), `i_3 = e_1 e_2 e_3` and
//! `i_st = e_t i_3`. The Cayley table is generated from the generator rules
//! once per process and checked against the signature before it is handed out.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::LazyLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of basis blades.
pub const BLADE_COUNT: usize = 16;

/// Generator bitmasks: bit 0 = e_t, bit 1 = e_1, bit 2 = e_2, bit 3 = e_3.
const BLADE_MASKS: [u8; BLADE_COUNT] = [
    0b0000, 0b0001, 0b0010, 0b0100, 0b1000, 0b0110, 0b1010, 0b1100, 0b0011, 0b0101, 0b1001,
    0b1110, 0b0111, 0b1011, 0b1101, 0b1111,
];

/// Blade names in basis order. Also the CSV header names.
pub const BLADE_NAMES: [&str; BLADE_COUNT] = [
    "1", "e_t", "e_1", "e_2", "e_3", "e_12", "e_13", "e_23", "e_t1", "e_t2", "e_t3", "i_3",
    "e_t12", "e_t13", "e_t23", "i_st",
];

/// Index of one of the 16 canonical basis blades.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BladeIndex(u8);

impl BladeIndex {
    pub const SCALAR: Self = Self(0);
    pub const ET: Self = Self(1);
    pub const E1: Self = Self(2);
    pub const E2: Self = Self(3);
    pub const E3: Self = Self(4);
    pub const E12: Self = Self(5);
    pub const E13: Self = Self(6);
    pub const E23: Self = Self(7);
    pub const ET1: Self = Self(8);
    pub const ET2: Self = Self(9);
    pub const ET3: Self = Self(10);
    pub const I3: Self = Self(11);
    pub const ET12: Self = Self(12);
    pub const ET13: Self = Self(13);
    pub const ET23: Self = Self(14);
    pub const IST: Self = Self(15);

    pub fn new(index: usize) -> Result<Self> {
        if index < BLADE_COUNT {
            Ok(Self(index as u8))
        } else {
            Err(Error::Domain(format!("blade index {index} outside 0..16")))
        }
    }

    pub fn all() -> impl Iterator<Item = Self> {
        (0..BLADE_COUNT as u8).map(Self)
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Number of generators in the blade.
    pub fn grade(self) -> usize {
        BLADE_MASKS[self.get()].count_ones() as usize
    }

    /// True when the blade contains the temporal generator.
    pub fn has_time(self) -> bool {
        BLADE_MASKS[self.get()] & 1 == 1
    }

    pub fn name(self) -> &'static str {
        BLADE_NAMES[self.get()]
    }

    fn from_mask(mask: u8) -> Self {
        let idx = BLADE_MASKS
            .iter()
            .position(|&m| m == mask)
            .expect("every 4-bit mask is a blade");
        Self(idx as u8)
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Precomputed Cayley table of the geometric product on basis blades.
#[derive(Debug, Clone, PartialEq)]
pub struct SignTable {
    sign: [[f64; BLADE_COUNT]; BLADE_COUNT],
    blade: [[BladeIndex; BLADE_COUNT]; BLADE_COUNT],
}

impl SignTable {
    /// Builds the table for generator squares `e_t² = eps_t`, `e_k² = eps_space`.
    pub fn from_signature(eps_t: f64, eps_space: f64) -> Self {
        let metric = [eps_t, eps_space, eps_space, eps_space];
        let mut sign = [[0.0; BLADE_COUNT]; BLADE_COUNT];
        let mut blade = [[BladeIndex::SCALAR; BLADE_COUNT]; BLADE_COUNT];
        for i in 0..BLADE_COUNT {
            for j in 0..BLADE_COUNT {
                let (a, b) = (BLADE_MASKS[i], BLADE_MASKS[j]);
                // Each generator of `a` has to move past the lower generators of `b`.
                let mut swaps = 0;
                for bit in 0..4 {
                    if a >> bit & 1 == 1 {
                        swaps += (b & ((1u8 << bit) - 1)).count_ones();
                    }
                }
                let mut s = if swaps % 2 == 0 { 1.0 } else { -1.0 };
                for (bit, m) in metric.iter().enumerate() {
                    if (a & b) >> bit & 1 == 1 {
                        s *= m;
                    }
                }
                sign[i][j] = s;
                blade[i][j] = BladeIndex::from_mask(a ^ b);
            }
        }
        Self { sign, blade }
    }

    /// The table for Cl(3,1) with `e_t² = -1`, validated before return.
    pub fn spacetime() -> Self {
        let table = Self::from_signature(-1.0, 1.0);
        if let Err(msg) = table.validate() {
            panic!("generated Cayley table violates the signature: {msg}");
        }
        table
    }

    #[inline]
    pub fn sign(&self, a: BladeIndex, b: BladeIndex) -> f64 {
        self.sign[a.get()][b.get()]
    }

    #[inline]
    pub fn blade(&self, a: BladeIndex, b: BladeIndex) -> BladeIndex {
        self.blade[a.get()][b.get()]
    }

    /// Square of a basis blade, read off the table. Always ±1.
    pub fn square(&self, a: BladeIndex) -> f64 {
        debug_assert_eq!(self.blade(a, a), BladeIndex::SCALAR);
        self.sign(a, a)
    }

    /// Signature and pseudoscalar assertions for Cl(3,1).
    pub fn validate(&self) -> std::result::Result<(), String> {
        let gens = [BladeIndex::ET, BladeIndex::E1, BladeIndex::E2, BladeIndex::E3];
        let expect = [-1.0, 1.0, 1.0, 1.0];
        for (g, e) in gens.iter().zip(expect) {
            if self.square(*g) != e {
                return Err(format!("{g}² = {}, expected {e}", self.square(*g)));
            }
        }
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                if self.blade(a, b) != self.blade(b, a) || self.sign(a, b) != -self.sign(b, a) {
                    return Err(format!("{a} and {b} do not anticommute"));
                }
            }
        }
        for p in [BladeIndex::I3, BladeIndex::IST] {
            if self.square(p) != -1.0 {
                return Err(format!("{p}² = {}, expected -1", self.square(p)));
            }
        }
        let check = |a: BladeIndex, b: BladeIndex, want: BladeIndex| {
            self.blade(a, b) == want && self.sign(a, b) == 1.0
        };
        if !check(BladeIndex::E1, BladeIndex::E2, BladeIndex::E12)
            || !check(BladeIndex::E12, BladeIndex::E3, BladeIndex::I3)
            || !check(BladeIndex::ET, BladeIndex::I3, BladeIndex::IST)
            || !check(BladeIndex::ET, BladeIndex::E12, BladeIndex::ET12)
        {
            return Err("compound blades do not match their generator products".into());
        }
        Ok(())
    }
}

/// Enumerates `(e_t², e_k²)` over `{±1}²` and keeps the assignments under which
/// both `i_3` and `i_st` square to `-1`.
pub fn pseudoscalar_consistent_signatures() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for eps_t in [-1.0, 1.0] {
        for eps_space in [-1.0, 1.0] {
            let table = SignTable::from_signature(eps_t, eps_space);
            if table.square(BladeIndex::I3) == -1.0 && table.square(BladeIndex::IST) == -1.0 {
                out.push((eps_t, eps_space));
            }
        }
    }
    out
}

static TABLE: LazyLock<SignTable> = LazyLock::new(SignTable::spacetime);

/// A signed permutation of the coefficient vector: the action of multiplying
/// by a basis blade on one side.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SignedPerm {
    target: [u8; BLADE_COUNT],
    sign: [f64; BLADE_COUNT],
}

impl SignedPerm {
    fn left(table: &SignTable, blade: BladeIndex) -> Self {
        let mut p = Self { target: [0; BLADE_COUNT], sign: [0.0; BLADE_COUNT] };
        for a in BladeIndex::all() {
            p.target[a.get()] = table.blade(blade, a).0;
            p.sign[a.get()] = table.sign(blade, a);
        }
        p
    }

    fn right(table: &SignTable, blade: BladeIndex) -> Self {
        let mut p = Self { target: [0; BLADE_COUNT], sign: [0.0; BLADE_COUNT] };
        for a in BladeIndex::all() {
            p.target[a.get()] = table.blade(a, blade).0;
            p.sign[a.get()] = table.sign(a, blade);
        }
        p
    }

    #[inline]
    pub(crate) fn apply(&self, h: &Multivector) -> Multivector {
        let mut out = [0.0; BLADE_COUNT];
        for i in 0..BLADE_COUNT {
            out[self.target[i] as usize] = self.sign[i] * h.0[i];
        }
        Multivector(out)
    }
}

/// One i_3-complex channel: blades `(re, im)` with `e_re · i_3 = sign · e_im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPlane {
    pub re: BladeIndex,
    pub im: BladeIndex,
    pub sign: f64,
}

/// Pairs the 16 blades into the 8 planes that right multiplication by `i_3`
/// rotates. In plane coordinates `z = c_re + i·sign·c_im`, right
/// multiplication by `exp(θ i_3)` is multiplication of `z` by `exp(iθ)`.
pub fn i3_planes(table: &SignTable) -> [ComplexPlane; 8] {
    let mut seen = [false; BLADE_COUNT];
    let mut planes = Vec::with_capacity(8);
    for a in BladeIndex::all() {
        if seen[a.get()] {
            continue;
        }
        let b = table.blade(a, BladeIndex::I3);
        seen[a.get()] = true;
        seen[b.get()] = true;
        planes.push(ComplexPlane { re: a, im: b, sign: table.sign(a, BladeIndex::I3) });
    }
    planes.try_into().expect("16 blades form 8 planes")
}

pub(crate) struct Actions {
    pub left_et: SignedPerm,
    pub right_i3: SignedPerm,
    pub planes: [ComplexPlane; 8],
}

pub(crate) static ACTIONS: LazyLock<Actions> = LazyLock::new(|| Actions {
    left_et: SignedPerm::left(&TABLE, BladeIndex::ET),
    right_i3: SignedPerm::right(&TABLE, BladeIndex::I3),
    planes: i3_planes(&TABLE),
});

/// The process-wide Cl(3,1) Cayley table.
pub fn sign_table() -> &'static SignTable {
    &TABLE
}

/// A Cl(3,1) multivector.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Multivector(pub [f64; BLADE_COUNT]);

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in BladeIndex::all() {
            let c = self.0[b.get()];
            if c != 0.0 {
                if !first {
                    f.write_str(" + ")?;
                }
                write!(f, "{c}·{b}")?;
                first = false;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Multivector {
    pub const ZERO: Self = Self([0.0; BLADE_COUNT]);

    pub fn scalar(s: f64) -> Self {
        let mut m = Self::ZERO;
        m.0[0] = s;
        m
    }

    pub fn blade(b: BladeIndex) -> Self {
        Self::blade_scaled(b, 1.0)
    }

    pub fn blade_scaled(b: BladeIndex, c: f64) -> Self {
        let mut m = Self::ZERO;
        m.0[b.get()] = c;
        m
    }

    pub fn one() -> Self {
        Self::scalar(1.0)
    }

    pub fn e_t() -> Self {
        Self::blade(BladeIndex::ET)
    }

    pub fn i3() -> Self {
        Self::blade(BladeIndex::I3)
    }

    pub fn i_st() -> Self {
        Self::blade(BladeIndex::IST)
    }

    pub fn coeffs(&self) -> &[f64; BLADE_COUNT] {
        &self.0
    }

    pub fn coeff(&self, b: BladeIndex) -> f64 {
        self.0[b.get()]
    }

    /// Random multivector: 16 i.i.d. uniform coefficients on [-1, 1], normalized.
    pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut m = Self::ZERO;
            for c in m.0.iter_mut() {
                *c = rng.gen_range(-1.0..=1.0);
            }
            let n = m.norm();
            if n > 1e-6 {
                return m * (1.0 / n);
            }
        }
    }

    pub fn geometric_product(&self, rhs: &Self) -> Self {
        let t = &*TABLE;
        let mut out = [0.0; BLADE_COUNT];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let signs = &t.sign[i];
            let blades = &t.blade[i];
            for (j, &b) in rhs.0.iter().enumerate() {
                out[blades[j].get()] += signs[j] * a * b;
            }
        }
        Self(out)
    }

    /// Grade projection. `k` must lie in 0..=4.
    pub fn grade(&self, k: usize) -> Result<Self> {
        if k > 4 {
            return Err(Error::Domain(format!("grade {k} outside 0..=4")));
        }
        let mut out = Self::ZERO;
        for b in BladeIndex::all().filter(|b| b.grade() == k) {
            out.0[b.get()] = self.0[b.get()];
        }
        Ok(out)
    }

    /// Principal reverse: negates e_t, e_12, e_13, e_23, i_3 and i_st.
    ///
    /// This is reversion composed with `e_t -> -e_t`, an anti-automorphism
    /// under which every basis blade satisfies `B · reverse(B) = 1`.
    pub fn reverse(&self) -> Self {
        let mut out = *self;
        for b in [
            BladeIndex::ET,
            BladeIndex::E12,
            BladeIndex::E13,
            BladeIndex::E23,
            BladeIndex::I3,
            BladeIndex::IST,
        ] {
            out.0[b.get()] = -out.0[b.get()];
        }
        out
    }

    /// Scalar part.
    pub fn trace(&self) -> f64 {
        self.0[0]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `e_t · self`, a signed permutation.
    #[inline]
    pub fn left_e_t(&self) -> Self {
        ACTIONS.left_et.apply(self)
    }

    /// `self · i_3`, a signed permutation.
    #[inline]
    pub fn right_i3(&self) -> Self {
        ACTIONS.right_i3.apply(self)
    }

    /// `(h₊, h₋)` with `h± = (h ± e_t h i_3) / 2`.
    pub fn split(&self) -> (Self, Self) {
        let flipped = self.left_e_t().right_i3();
        ((*self + flipped) * 0.5, (*self - flipped) * 0.5)
    }

    /// `exp(α e_t) · self`.
    #[inline]
    pub fn left_exp_e_t(&self, alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        *self * c + self.left_e_t() * s
    }

    /// `self · exp(α i_3)`.
    #[inline]
    pub fn right_exp_i3(&self, alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        *self * c + self.right_i3() * s
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

/// `cos α + u sin α` for a `u` squaring to scalar `-1`.
pub fn blade_exp(u: &Multivector, alpha: f64) -> Result<Multivector> {
    let sq = u * u;
    let mut defect = (sq.0[0] + 1.0).abs();
    for c in &sq.0[1..] {
        defect = defect.max(c.abs());
    }
    if defect > 1e-12 {
        return Err(Error::Domain(format!(
            "exponent direction must square to -1, got {sq:?}"
        )));
    }
    let (s, c) = alpha.sin_cos();
    Ok(Multivector::scalar(c) + *u * s)
}

/// `Tr(exp(α i_3) · reverse(f₊) · g₋)`; identically zero in Cl(3,1).
pub fn orthogonality_check(f: &Multivector, g: &Multivector, alpha: f64) -> f64 {
    let rot = Multivector::one().right_exp_i3(alpha);
    let (f_plus, _) = f.split();
    let (_, g_minus) = g.split();
    (rot * f_plus.reverse() * g_minus).trace()
}

impl Index<BladeIndex> for Multivector {
    type Output = f64;
    fn index(&self, b: BladeIndex) -> &f64 {
        &self.0[b.get()]
    }
}

impl IndexMut<BladeIndex> for Multivector {
    fn index_mut(&mut self, b: BladeIndex) -> &mut f64 {
        &mut self.0[b.get()]
    }
}

impl Add for Multivector {
    type Output = Self;
    #[inline]
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Self;
    #[inline]
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    #[inline]
    fn mul(mut self, rhs: f64) -> Self {
        self *= rhs;
        self
    }
}

impl MulAssign<f64> for Multivector {
    #[inline]
    fn mul_assign(&mut self, rhs: f64) {
        for a in self.0.iter_mut() {
            *a *= rhs;
        }
    }
}

impl Mul for Multivector {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self.geometric_product(&rhs)
    }
}

impl Mul<&Multivector> for &Multivector {
    type Output = Multivector;
    #[inline]
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs)
    }
}

impl std::iter::Sum for Multivector {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b(x: BladeIndex) -> Multivector {
        Multivector::blade(x)
    }

    #[test]
    fn compound_blades_are_generator_products() {
        assert_eq!(b(BladeIndex::E1) * b(BladeIndex::E2), b(BladeIndex::E12));
        assert_eq!(b(BladeIndex::ET) * b(BladeIndex::E12), b(BladeIndex::ET12));
        assert_eq!(b(BladeIndex::E12) * b(BladeIndex::E3), b(BladeIndex::I3));
        assert_eq!(b(BladeIndex::ET) * b(BladeIndex::I3), b(BladeIndex::IST));
        assert_eq!(b(BladeIndex::ET) * b(BladeIndex::E1), b(BladeIndex::ET1));
    }

    #[test]
    fn signature() {
        assert_eq!(b(BladeIndex::ET) * b(BladeIndex::ET), -Multivector::one());
        for e in [BladeIndex::E1, BladeIndex::E2, BladeIndex::E3] {
            assert_eq!(b(e) * b(e), Multivector::one());
        }
        assert_eq!(Multivector::i3() * Multivector::i3(), -Multivector::one());
        assert_eq!(Multivector::i_st() * Multivector::i_st(), -Multivector::one());
    }

    #[test]
    fn only_one_signature_makes_both_pseudoscalars_imaginary() {
        assert_eq!(pseudoscalar_consistent_signatures(), vec![(-1.0, 1.0)]);
        // The doubly negative signature is detectably wrong.
        assert!(SignTable::from_signature(-1.0, -1.0).validate().is_err());
    }

    #[test]
    fn identity_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let h = Multivector::random_unit(&mut rng);
        assert_eq!(Multivector::one() * h, h);
        assert_eq!(h * Multivector::one(), h);
    }

    #[test]
    fn grade_projection() {
        let h = Multivector::one() + Multivector::e_t() + b(BladeIndex::E12);
        assert_eq!(h.grade(1).unwrap(), Multivector::e_t());
        assert_eq!(Multivector::i_st().grade(4).unwrap(), Multivector::i_st());
        assert!(matches!(h.grade(5), Err(Error::Domain(_))));
        let counts: Vec<usize> =
            (0..=4).map(|k| BladeIndex::all().filter(|b| b.grade() == k).count()).collect();
        assert_eq!(counts, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn reverse_signs() {
        assert_eq!(Multivector::e_t().reverse(), -Multivector::e_t());
        assert_eq!(b(BladeIndex::ET1).reverse(), b(BladeIndex::ET1));
        for blade in BladeIndex::all() {
            assert_eq!(b(blade) * b(blade).reverse(), Multivector::one(), "{blade}");
        }
    }

    #[test]
    fn trace_and_norm() {
        let h = Multivector::scalar(3.0) + b(BladeIndex::E1) * 2.0;
        assert_eq!(h.trace(), 3.0);
        assert_eq!((b(BladeIndex::E1) * b(BladeIndex::E1)).trace(), 1.0);
        let v = Multivector::e_t() + b(BladeIndex::E1);
        assert!((v.norm() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn split_of_one() {
        let (p, m) = Multivector::one().split();
        assert_eq!(p, (Multivector::one() + Multivector::i_st()) * 0.5);
        assert_eq!(m, (Multivector::one() - Multivector::i_st()) * 0.5);
    }

    #[test]
    fn blade_exp_domain() {
        assert_eq!(blade_exp(&Multivector::e_t(), 0.0).unwrap(), Multivector::one());
        let q = blade_exp(&Multivector::i3(), std::f64::consts::FRAC_PI_2).unwrap();
        assert!((q - Multivector::i3()).max_abs() < 1e-15);
        assert!(blade_exp(&b(BladeIndex::E1), 0.3).is_err());
        assert!(blade_exp(&(Multivector::i3() * 2.0), 0.3).is_err());
    }

    #[test]
    fn orthogonality_examples() {
        assert_eq!(orthogonality_check(&Multivector::one(), &Multivector::one(), 0.7), 0.0);
        assert_eq!(orthogonality_check(&b(BladeIndex::E1), &Multivector::e_t(), 0.0), 0.0);
    }

    #[test]
    fn planes_cover_all_blades_once() {
        let planes = i3_planes(sign_table());
        let mut hit = [0; BLADE_COUNT];
        for p in planes {
            hit[p.re.get()] += 1;
            hit[p.im.get()] += 1;
            // e_re · i_3 = sign · e_im
            assert_eq!(b(p.re) * Multivector::i3(), b(p.im) * p.sign);
        }
        assert!(hit.iter().all(|&h| h == 1));
    }

    #[test]
    fn signed_permutations_match_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = Multivector::random_unit(&mut rng);
        assert!((h.left_e_t() - Multivector::e_t() * h).max_abs() < 1e-15);
        assert!((h.right_i3() - h * Multivector::i3()).max_abs() < 1e-15);
    }
}
