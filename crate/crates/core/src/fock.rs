//! Sparse bosonic Fock states over a fixed number of modes.
//!
//! A [`FockKet`] maps occupation vectors to complex amplitudes. Passive linear
//! optics is described by a single-particle [`ModeUnitary`] whose column `i`
//! is the image of the creation operator of mode `i`:
//!
//! ```text
//! a_i† ↦ Σ_j U[j][i] a_j†
//! ```
//!
//! [`apply_mode_unitary`] lifts that action to multi-photon states by expanding
//! the creation-operator polynomial that builds each basis ket from vacuum.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest total photon number a ket may carry.
pub const MAX_PHOTONS: u32 = 16;

/// Entrywise tolerance on `U†U − 1` accepted by [`ModeUnitary::new`].
pub const UNITARITY_TOL: f64 = 1e-10;

/// Tolerance on `|‖ψ‖² − 1|` for a ket to count as normalized.
pub const NORM_TOL: f64 = 1e-12;

/// Photon count per mode.
///
/// Ordering is lexicographic on the counts, *descending*: for two modes and one
/// photon `(1,0)` sorts before `(0,1)`, so for four modes and two photons the
/// canonical basis starts `2000, 1100, 1010, 1001, 0200, …` and ends `0002`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OccupationVector(Vec<u32>);

impl OccupationVector {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::NoModes);
        }
        Ok(Self(counts))
    }

    pub fn vacuum(num_modes: usize) -> Self {
        Self(vec![0; num_modes.max(1)])
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn num_modes(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `Π n_i!`, the normalisation of `Π (a_i†)^{n_i} |0⟩`.
    fn factorial_product(&self) -> f64 {
        self.0.iter().map(|&n| factorial(n)).product()
    }
}

impl Ord for OccupationVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for OccupationVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&n| n < 10) {
            for n in &self.0 {
                write!(f, "{n}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl FromStr for OccupationVector {
    type Err = Error;

    /// Parses either a digit string (`"1100"`) or a parenthesised list (`"(10,0,2)"`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedOutcome(s.to_string());
        let counts = if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            inner
                .split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(counts)
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// All occupation vectors of `num_modes` modes holding `total_photons` photons,
/// in canonical order. There are `C(total + M − 1, M − 1)` of them.
pub fn enumerate_basis(num_modes: usize, total_photons: u32) -> Result<Vec<OccupationVector>> {
    if num_modes == 0 {
        return Err(Error::NoModes);
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; num_modes];
    fill_basis(&mut current, 0, total_photons, &mut out);
    Ok(out)
}

fn fill_basis(current: &mut [u32], mode: usize, remaining: u32, out: &mut Vec<OccupationVector>) {
    if mode + 1 == current.len() {
        current[mode] = remaining;
        out.push(OccupationVector(current.to_vec()));
        return;
    }
    for n in (0..=remaining).rev() {
        current[mode] = n;
        fill_basis(current, mode + 1, remaining - n, out);
    }
    current[mode] = 0;
}

/// Sparse state vector in a fixed-photon-number sector.
#[derive(Clone, Debug, PartialEq)]
pub struct FockKet {
    num_modes: usize,
    amplitudes: BTreeMap<OccupationVector, Complex64>,
}

impl FockKet {
    pub fn vacuum(num_modes: usize) -> Result<Self> {
        if num_modes == 0 {
            return Err(Error::NoModes);
        }
        Ok(Self::basis(OccupationVector::vacuum(num_modes)))
    }

    /// The basis ket `|occ⟩` with unit amplitude.
    pub fn basis(occ: OccupationVector) -> Self {
        let num_modes = occ.num_modes();
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(occ, Complex64::new(1.0, 0.0));
        Self {
            num_modes,
            amplitudes,
        }
    }

    /// Builds a ket from `(occupation, amplitude)` pairs. Repeated occupations are
    /// summed and exact zeros dropped.
    pub fn from_amplitudes<I>(num_modes: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (OccupationVector, Complex64)>,
    {
        if num_modes == 0 {
            return Err(Error::NoModes);
        }
        let mut photons = None;
        let mut amplitudes: BTreeMap<OccupationVector, Complex64> = BTreeMap::new();
        for (occ, amp) in entries {
            if occ.num_modes() != num_modes {
                return Err(Error::ModeCountMismatch {
                    left: num_modes,
                    right: occ.num_modes(),
                });
            }
            let total = occ.total();
            if total > MAX_PHOTONS {
                return Err(Error::TooManyPhotons(total));
            }
            match photons {
                None => photons = Some(total),
                Some(expected) if expected != total => {
                    return Err(Error::MixedPhotonNumber {
                        expected,
                        found: total,
                    })
                }
                Some(_) => {}
            }
            *amplitudes.entry(occ).or_default() += amp;
        }
        amplitudes.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(Self {
            num_modes,
            amplitudes,
        })
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    /// Photon number of the sector, `None` for the zero vector.
    pub fn photon_number(&self) -> Option<u32> {
        self.amplitudes.keys().next().map(OccupationVector::total)
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, occ: &OccupationVector) -> Complex64 {
        self.amplitudes.get(occ).copied().unwrap_or_default()
    }

    /// Entries in canonical basis order.
    pub fn iter(&self) -> impl Iterator<Item = (&OccupationVector, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(Complex64::norm_sqr).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(Error::EmptyKet);
        }
        Ok(self.scaled(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        out.amplitudes.values_mut().for_each(|c| *c *= factor);
        out.amplitudes.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        out
    }

    /// Applies the creation operator of `mode`.
    pub fn create(&self, mode: usize) -> Result<Self> {
        self.check_mode(mode)?;
        if let Some(n) = self.photon_number() {
            if n + 1 > MAX_PHOTONS {
                return Err(Error::TooManyPhotons(n + 1));
            }
        }
        let entries = self.amplitudes.iter().map(|(occ, &c)| {
            let mut counts = occ.0.clone();
            let factor = f64::from(counts[mode] + 1).sqrt();
            counts[mode] += 1;
            (OccupationVector(counts), c * factor)
        });
        Self::from_amplitudes(self.num_modes, entries)
    }

    /// Applies the annihilation operator of `mode`.
    pub fn annihilate(&self, mode: usize) -> Result<Self> {
        self.check_mode(mode)?;
        let entries = self.amplitudes.iter().filter_map(|(occ, &c)| {
            let n = occ.0[mode];
            (n > 0).then(|| {
                let mut counts = occ.0.clone();
                counts[mode] -= 1;
                (OccupationVector(counts), c * f64::from(n).sqrt())
            })
        });
        Self::from_amplitudes(self.num_modes, entries)
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_modes(other)?;
        let (small, large, flip) = if self.len() <= other.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (occ, a) in &small.amplitudes {
            if let Some(b) = large.amplitudes.get(occ) {
                acc += if flip { b.conj() * a } else { a.conj() * b };
            }
        }
        Ok(acc)
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, other: &Self, factor: Complex64) -> Result<Self> {
        self.check_same_modes(other)?;
        let entries = self.amplitudes.iter().map(|(o, &c)| (o.clone(), c)).chain(
            other
                .amplitudes
                .iter()
                .map(|(o, &c)| (o.clone(), c * factor)),
        );
        Self::from_amplitudes(self.num_modes, entries)
    }

    /// Dense amplitude vector over `basis` (entries missing from the basis are dropped).
    pub fn to_dense(&self, basis: &[OccupationVector]) -> Vec<Complex64> {
        basis.iter().map(|occ| self.amplitude(occ)).collect()
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.num_modes {
            return Err(Error::ModeOutOfRange {
                mode,
                num_modes: self.num_modes,
            });
        }
        Ok(())
    }

    fn check_same_modes(&self, other: &Self) -> Result<()> {
        if self.num_modes != other.num_modes {
            return Err(Error::ModeCountMismatch {
                left: self.num_modes,
                right: other.num_modes,
            });
        }
        Ok(())
    }
}

/// Single-particle unitary acting on creation operators.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeUnitary {
    matrix: DMatrix<Complex64>,
}

impl ModeUnitary {
    /// Wraps `matrix` after checking `U†U = 1` to within [`UNITARITY_TOL`].
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let deviation = unitarity_deviation(&matrix);
        if deviation > UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { matrix })
    }

    /// Real orthogonal matrices given row-major.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.iter().map(|r| r.len()).find(|&l| l != n).unwrap_or(0),
            });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(rows[i][j], 0.0)
        }))
    }

    pub fn identity(num_modes: usize) -> Self {
        Self {
            matrix: DMatrix::identity(num_modes, num_modes),
        }
    }

    pub fn num_modes(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// `U[row][col]`: coefficient of `a_row†` in the image of `a_col†`.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    /// `self · first`, i.e. `first` is applied before `self`.
    pub fn after(&self, first: &ModeUnitary) -> Result<Self> {
        if self.num_modes() != first.num_modes() {
            return Err(Error::DimensionMismatch {
                expected: self.num_modes(),
                found: first.num_modes(),
            });
        }
        Self::new(&self.matrix * &first.matrix)
    }

    pub fn deviation_from_unitary(&self) -> f64 {
        unitarity_deviation(&self.matrix)
    }
}

fn unitarity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let product = m.adjoint() * m;
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((product[(i, j)] - target).norm());
        }
    }
    worst
}

/// Monomial in creation operators: exponent per mode → coefficient.
type Polynomial = BTreeMap<Vec<u32>, Complex64>;

/// Lifts the single-particle `unitary` to the Fock space of `ket`.
///
/// Each basis ket `Π (a_i†)^{n_i}/√(n_i!) |0⟩` has every `a_i†` replaced by
/// `Σ_j U[j][i] a_j†`; the resulting polynomial is expanded and each monomial
/// `Π (a_j†)^{k_j} |0⟩` is converted back to `Π √(k_j!) |k⟩`.
pub fn apply_mode_unitary(unitary: &ModeUnitary, ket: &FockKet) -> Result<FockKet> {
    let m = ket.num_modes();
    if unitary.num_modes() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: unitary.num_modes(),
        });
    }
    if ket.is_empty() {
        return Err(Error::EmptyKet);
    }
    let deviation = unitary.deviation_from_unitary();
    if deviation > UNITARITY_TOL {
        return Err(Error::NotUnitary { deviation });
    }

    let mut out: BTreeMap<OccupationVector, Complex64> = BTreeMap::new();
    for (occ, &amp) in ket.iter() {
        let mut poly: Polynomial = BTreeMap::new();
        poly.insert(vec![0; m], amp / occ.factorial_product().sqrt());
        for (mode, &n) in occ.counts().iter().enumerate() {
            for _ in 0..n {
                poly = multiply_linear(&poly, unitary, mode);
            }
        }
        for (exponents, coeff) in poly {
            let image = OccupationVector(exponents);
            let amp = coeff * image.factorial_product().sqrt();
            *out.entry(image).or_default() += amp;
        }
    }
    FockKet::from_amplitudes(m, out)
}

/// `poly · Σ_j U[j][col] a_j†`.
fn multiply_linear(poly: &Polynomial, unitary: &ModeUnitary, col: usize) -> Polynomial {
    let mut out: Polynomial = BTreeMap::new();
    for (exponents, &coeff) in poly {
        for row in 0..unitary.num_modes() {
            let u = unitary.entry(row, col);
            if u == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut e = exponents.clone();
            e[row] += 1;
            *out.entry(e).or_default() += coeff * u;
        }
    }
    out
}

/// Applies the one-body operator `Σ_ij h[i][j] a_i† a_j` to `ket`.
pub fn apply_one_body(h: &DMatrix<Complex64>, ket: &FockKet) -> Result<FockKet> {
    let m = ket.num_modes();
    if h.nrows() != m || h.ncols() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: h.nrows(),
        });
    }
    let mut out: BTreeMap<OccupationVector, Complex64> = BTreeMap::new();
    for (occ, &amp) in ket.iter() {
        for j in 0..m {
            let nj = occ.counts()[j];
            if nj == 0 {
                continue;
            }
            for i in 0..m {
                let hij = h[(i, j)];
                if hij == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let mut counts = occ.counts().to_vec();
                counts[j] -= 1;
                let ni = counts[i];
                counts[i] += 1;
                let factor = (f64::from(nj) * f64::from(ni + 1)).sqrt();
                *out.entry(OccupationVector(counts)).or_default() += hij * amp * factor;
            }
        }
    }
    FockKet::from_amplitudes(m, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn occ(s: &str) -> OccupationVector {
        s.parse().unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Exhaustive enumeration over the cube `[0, total]^M`.
    fn brute_force_basis(num_modes: usize, total: u32) -> Vec<Vec<u32>> {
        let side = total as usize + 1;
        let mut out = Vec::new();
        for code in 0..side.pow(num_modes as u32) {
            let mut rest = code;
            let mut v = vec![0u32; num_modes];
            for slot in v.iter_mut().rev() {
                *slot = (rest % side) as u32;
                rest /= side;
            }
            if v.iter().sum::<u32>() == total {
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn basis_counts_match_stars_and_bars() {
        for m in 1..=5 {
            for n in 0..=4u32 {
                let basis = enumerate_basis(m, n).unwrap();
                let expected = binomial(u64::from(n) + m as u64 - 1, m as u64 - 1);
                assert_eq!(basis.len() as u64, expected, "M={m} N={n}");
                let mut brute = brute_force_basis(m, n);
                brute.sort_by(|a, b| b.cmp(a));
                let got: Vec<Vec<u32>> = basis.iter().map(|o| o.counts().to_vec()).collect();
                assert_eq!(got, brute);
            }
        }
        assert_eq!(enumerate_basis(4, 2).unwrap().len(), 10);
    }

    #[test]
    fn small_bases() {
        let two = enumerate_basis(2, 1).unwrap();
        assert_eq!(two, vec![occ("10"), occ("01")]);
        assert_eq!(enumerate_basis(1, 3).unwrap(), vec![occ("3")]);
        assert_eq!(enumerate_basis(0, 3), Err(Error::NoModes));
        let four: Vec<String> = enumerate_basis(4, 2)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            four,
            ["2000", "1100", "1010", "1001", "0200", "0110", "0101", "0020", "0011", "0002"]
        );
    }

    #[test]
    fn creation_operators() {
        let vac = FockKet::vacuum(4).unwrap();
        let one = vac.create(0).unwrap();
        assert_eq!(one.amplitude(&occ("1000")), c(1.0));
        let two = one.create(0).unwrap();
        assert!((two.amplitude(&occ("2000")) - c(2f64.sqrt())).norm() < 1e-15);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let sup = FockKet::from_amplitudes(4, [(occ("1000"), c(s)), (occ("0010"), c(s))]).unwrap();
        let lifted = sup.create(1).unwrap();
        assert_eq!(lifted.len(), 2);
        assert_eq!(lifted.amplitude(&occ("1100")), c(s));
        assert_eq!(lifted.amplitude(&occ("0110")), c(s));

        assert!(matches!(vac.create(4), Err(Error::ModeOutOfRange { .. })));
    }

    #[test]
    fn annihilation_is_adjoint_of_creation() {
        let ket = FockKet::basis(occ("2100"));
        let down = ket.annihilate(0).unwrap();
        assert!((down.amplitude(&occ("1100")) - c(2f64.sqrt())).norm() < 1e-15);
        assert!(FockKet::vacuum(2)
            .unwrap()
            .annihilate(0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn inner_products() {
        let a = FockKet::basis(occ("1100"));
        let b = FockKet::basis(occ("1001"));
        assert_eq!(a.inner(&a).unwrap(), c(1.0));
        assert_eq!(a.inner(&b).unwrap(), c(0.0));
        let x = FockKet::from_amplitudes(
            4,
            [
                (occ("1100"), Complex64::new(0.3, -0.4)),
                (occ("1001"), Complex64::new(0.1, 0.2)),
            ],
        )
        .unwrap();
        let xx = x.inner(&x).unwrap();
        assert!(xx.im.abs() < 1e-16 && (xx.re - x.norm_sqr()).abs() < 1e-16);
        let other = FockKet::basis(occ("110"));
        assert!(matches!(
            a.inner(&other),
            Err(Error::ModeCountMismatch { .. })
        ));
    }

    #[test]
    fn construction_guards() {
        let mixed = FockKet::from_amplitudes(4, [(occ("1100"), c(1.0)), (occ("1000"), c(1.0))]);
        assert!(matches!(mixed, Err(Error::MixedPhotonNumber { .. })));
        let big = OccupationVector::new(vec![17, 0]).unwrap();
        assert_eq!(
            FockKet::from_amplitudes(2, [(big, c(1.0))]),
            Err(Error::TooManyPhotons(17))
        );
        let pruned =
            FockKet::from_amplitudes(4, [(occ("1100"), c(1.0)), (occ("1001"), c(0.0))]).unwrap();
        assert_eq!(pruned.len(), 1);
        let cancelled =
            FockKet::from_amplitudes(4, [(occ("1100"), c(1.0)), (occ("1100"), c(-1.0))]).unwrap();
        assert!(cancelled.is_empty());
    }

    #[test]
    fn identity_and_permutation() {
        let ket = FockKet::from_amplitudes(
            4,
            [
                (occ("1100"), Complex64::new(0.6, 0.0)),
                (occ("0011"), Complex64::new(0.0, 0.8)),
            ],
        )
        .unwrap();
        let same = apply_mode_unitary(&ModeUnitary::identity(4), &ket).unwrap();
        assert_eq!(same, ket);

        // mode 0 -> 2, 1 -> 3, 2 -> 0, 3 -> 1
        let perm = ModeUnitary::from_real_rows(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ])
        .unwrap();
        let out = apply_mode_unitary(&perm, &FockKet::basis(occ("2100"))).unwrap();
        assert_eq!(out.len(), 1);
        assert!((out.amplitude(&occ("0021")) - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn balanced_beamsplitter_bunches_photons() {
        // (c a0† + s a1†)(−s a0† + c a1†)|0⟩ with c = s = 1/√2 gives
        // −cs·√2 |20⟩ + (c² − s²)|11⟩ + cs·√2 |02⟩ = (−|20⟩ + |02⟩)/√2.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bs = ModeUnitary::from_real_rows(&[&[s, -s], &[s, s]]).unwrap();
        let out = apply_mode_unitary(&bs, &FockKet::basis(occ("11"))).unwrap();
        assert!((out.amplitude(&occ("20")) - c(-s)).norm() < 1e-15);
        assert!((out.amplitude(&occ("02")) - c(s)).norm() < 1e-15);
        assert!(out.amplitude(&occ("11")).norm() < 1e-15);
    }

    #[test]
    fn rejects_bad_unitaries() {
        let skew = DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.1), c(0.0), c(1.0)]);
        assert!(matches!(
            ModeUnitary::new(skew),
            Err(Error::NotUnitary { .. })
        ));
        let ket = FockKet::basis(occ("110"));
        assert!(matches!(
            apply_mode_unitary(&ModeUnitary::identity(2), &ket),
            Err(Error::DimensionMismatch { .. })
        ));
        let empty = FockKet::from_amplitudes(2, []).unwrap();
        assert_eq!(
            apply_mode_unitary(&ModeUnitary::identity(2), &empty),
            Err(Error::EmptyKet)
        );
    }

    #[test]
    fn one_body_number_operator() {
        let n0 = DMatrix::from_fn(3, 3, |i, j| c(if i == 0 && j == 0 { 1.0 } else { 0.0 }));
        let ket = FockKet::basis(occ("210"));
        let out = apply_one_body(&n0, &ket).unwrap();
        assert!((out.amplitude(&occ("210")) - c(2.0)).norm() < 1e-15);
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(occ("0110").to_string(), "0110");
        let wide = OccupationVector::new(vec![10, 2]).unwrap();
        assert_eq!(wide.to_string(), "(10,2)");
        assert_eq!(wide.to_string().parse::<OccupationVector>().unwrap(), wide);
        assert!("1x".parse::<OccupationVector>().is_err());
    }
}
