//! Exterior algebra of a fixed 6-dimensional vector space.
//!
//! Multi-indices are bitmasks over the six basis covectors (bit `i` set means
//! `e^{i+1}` is present), coefficients live in a sparse ordered map. On top of
//! the graded algebra this module provides interior products, the extension of
//! a bilinear pairing on covectors to p-forms (determinant on decomposables),
//! the two star operators used throughout — the metric Hodge star and the
//! symplectic star, both taken against the volume κ³/3! — the action of an
//! endomorphism on forms through all argument slots, and linear inversion of
//! the injective wedge maps (recovering α from α∧κ and the like).

use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Dimension of the underlying vector space.
pub const DIM: usize = 6;
/// Bitmask of the full index set {1,…,6}.
pub const FULL_MASK: u8 = 0b11_1111;

/// Bitmask for a set of 1-based indices. Panics on duplicates or range
/// violations — masks are internal plumbing, always produced from validated
/// data.
pub fn mask_from_indices(indices: &[usize]) -> u8 {
    let mut mask = 0u8;
    for &i in indices {
        assert!((1..=DIM).contains(&i), "index {i} out of range");
        let bit = 1u8 << (i - 1);
        assert!(mask & bit == 0, "duplicate index {i}");
        mask |= bit;
    }
    mask
}

/// Ascending 1-based indices of a mask.
pub fn mask_indices(mask: u8) -> Vec<usize> {
    (1..=DIM).filter(|i| mask & (1 << (i - 1)) != 0).collect()
}

/// Compact label of a mask: `e135`, or `1` for the empty mask.
pub fn mask_label(mask: u8) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let digits: String = mask_indices(mask).iter().map(|i| i.to_string()).collect();
    format!("e{digits}")
}

/// Sign of merging two disjoint ascending index blocks: the parity of the
/// number of pairs (i ∈ a, j ∈ b) with i > j. Zero masks overlap is the
/// caller's business — this assumes `a & b == 0`.
pub fn merge_sign(a: u8, b: u8) -> i8 {
    debug_assert_eq!(a & b, 0, "overlapping masks");
    let mut inversions = 0u32;
    for j in 0..DIM {
        if b & (1 << j) != 0 {
            inversions += (a >> (j + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A p-form with scalar coefficients on the fixed ascending basis.
#[derive(Clone, PartialEq)]
pub struct KForm<S> {
    degree: u8,
    terms: BTreeMap<u8, S>,
}

impl<S: Scalar> KForm<S> {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM);
        KForm {
            degree: degree as u8,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 form from a scalar.
    pub fn constant(value: S) -> Self {
        let mut f = Self::zero(0);
        f.add_term(0, value);
        f
    }

    /// Basis form `e^{i₁…i_p}` for ascending 1-based indices.
    pub fn basis(indices: &[usize]) -> Self {
        Self::term(S::one(), indices)
    }

    /// `c·e^{i₁…i_p}`; indices may come in any order, the sign of the sort
    /// permutation is absorbed into the coefficient.
    pub fn term(coeff: S, indices: &[usize]) -> Self {
        let mut f = Self::zero(indices.len());
        let mut mask = 0u8;
        let mut sign = 1i8;
        for (pos, &i) in indices.iter().enumerate() {
            assert!((1..=DIM).contains(&i), "index {i} out of range");
            let bit = 1u8 << (i - 1);
            assert!(mask & bit == 0, "duplicate index {i}");
            // Count already-placed indices larger than i: each is one
            // transposition moving e^i left past it.
            let larger = indices[..pos].iter().filter(|&&j| j > i).count();
            if larger % 2 == 1 {
                sign = -sign;
            }
            mask |= bit;
        }
        let c = if sign < 0 { -coeff } else { coeff };
        f.add_term(mask, c);
        f
    }

    /// Sum of `c·e^I` terms, all of one degree.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (S, Vec<usize>)>) -> Self {
        let mut f = Self::zero(degree);
        for (c, idx) in terms {
            assert_eq!(idx.len(), degree, "term degree mismatch");
            f += &Self::term(c, &idx);
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn approx_zero(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.approx_zero(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.degree == other.degree && (self.clone() - other.clone()).approx_zero(tol)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Coefficient of the ascending basis form with this mask.
    pub fn coeff_mask(&self, mask: u8) -> S {
        self.terms.get(&mask).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient against arbitrary-order indices (sign-adjusted); repeated
    /// indices give zero.
    pub fn coeff(&self, indices: &[usize]) -> S {
        let mut mask = 0u8;
        let mut sign = 1i8;
        for (pos, &i) in indices.iter().enumerate() {
            let bit = 1u8 << (i - 1);
            if mask & bit != 0 {
                return S::zero();
            }
            let larger = indices[..pos].iter().filter(|&&j| j > i).count();
            if larger % 2 == 1 {
                sign = -sign;
            }
            mask |= bit;
        }
        let c = self.coeff_mask(mask);
        if sign < 0 {
            -c
        } else {
            c
        }
    }

    fn add_term(&mut self, mask: u8, coeff: S) {
        debug_assert_eq!(mask.count_ones() as u8, self.degree, "mask degree");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn set_coeff(&mut self, indices: &[usize], coeff: S) {
        let mask = mask_from_indices(indices);
        self.terms.remove(&mask);
        self.add_term(mask, coeff);
    }

    pub fn iter(&self) -> impl Iterator<Item = (u8, &S)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    /// Drop float-noise coefficients below `tol` (no-op in exact mode, where
    /// exact zeros are pruned eagerly).
    pub fn cleaned(mut self, tol: f64) -> Self {
        if !S::EXACT {
            self.terms.retain(|_, c| !c.approx_zero(tol));
        }
        self
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero(self.degree());
        for (m, c) in self.iter() {
            out.add_term(m, c.clone() * k.clone());
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let degree = self.degree() + other.degree();
        if degree > DIM {
            return Self::zero(DIM);
        }
        let mut out = Self::zero(degree);
        for (ma, ca) in self.iter() {
            for (mb, cb) in other.iter() {
                if ma & mb != 0 {
                    continue;
                }
                let sign = merge_sign(ma, mb);
                let c = ca.clone() * cb.clone();
                out.add_term(ma | mb, if sign < 0 { -c } else { c });
            }
        }
        out
    }

    /// Interior product with a vector given by its components in the frame
    /// dual to the covector basis (insertion into the first slot).
    pub fn contract_vector(&self, v: &[S]) -> Self {
        assert_eq!(v.len(), DIM);
        if self.degree == 0 {
            return Self::zero(0);
        }
        let mut out = Self::zero(self.degree() - 1);
        for (mask, c) in self.iter() {
            for (pos, i) in mask_indices(mask).into_iter().enumerate() {
                let vi = v[i - 1].clone();
                if vi.is_zero() {
                    continue;
                }
                let coeff = vi * c.clone();
                out.add_term(
                    mask & !(1 << (i - 1)),
                    if pos % 2 == 1 { -coeff } else { coeff },
                );
            }
        }
        out
    }

    /// Interior product with the i-th basis vector (1-based).
    pub fn contract_basis(&self, i: usize) -> Self {
        let mut v = vec![S::zero(); DIM];
        v[i - 1] = S::one();
        self.contract_vector(&v)
    }

    /// Evaluate on p vectors.
    pub fn eval(&self, vectors: &[Vec<S>]) -> S {
        assert_eq!(vectors.len(), self.degree());
        let mut f = self.clone();
        for v in vectors {
            f = f.contract_vector(v);
        }
        f.coeff_mask(0)
    }

    /// Pull back under the covector substitution `e^i ↦ Σ_j m[i][j]·e^j`
    /// extended multiplicatively (an algebra morphism).
    pub fn substitute(&self, m: &Mat<S>) -> Self {
        assert_eq!((m.rows(), m.cols()), (DIM, DIM));
        let images: Vec<KForm<S>> = (0..DIM)
            .map(|i| {
                let mut img = KForm::zero(1);
                for j in 0..DIM {
                    img.add_term(1 << j, m.at(i, j).clone());
                }
                img
            })
            .collect();
        let mut out = Self::zero(self.degree());
        for (mask, c) in self.iter() {
            let mut prod = KForm::constant(S::one());
            for i in mask_indices(mask) {
                prod = prod.wedge(&images[i - 1]);
            }
            out = out + prod.scale(c);
        }
        out
    }
}

impl<S: Scalar> std::ops::Add for KForm<S> {
    type Output = KForm<S>;
    fn add(mut self, rhs: KForm<S>) -> KForm<S> {
        self += &rhs;
        self
    }
}

impl<S: Scalar> std::ops::AddAssign<&KForm<S>> for KForm<S> {
    fn add_assign(&mut self, rhs: &KForm<S>) {
        assert_eq!(self.degree, rhs.degree, "degree mismatch in sum");
        for (m, c) in rhs.iter() {
            self.add_term(m, c.clone());
        }
    }
}

impl<S: Scalar> std::ops::Sub for KForm<S> {
    type Output = KForm<S>;
    fn sub(self, rhs: KForm<S>) -> KForm<S> {
        self + (-rhs)
    }
}

impl<S: Scalar> std::ops::Neg for KForm<S> {
    type Output = KForm<S>;
    fn neg(mut self) -> KForm<S> {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<S: Scalar> fmt::Display for KForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, c) in self.iter() {
            let lit = c.literal();
            let (neg, magnitude) = match lit.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, lit),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mask == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude == "1" {
                write!(f, "{}", mask_label(mask))?;
            } else {
                write!(f, "{magnitude} {}", mask_label(mask))?;
            }
        }
        Ok(())
    }
}

// `Debug` = `Display` for forms; the coefficient map is noise in test
// failure output.
impl<S: Scalar> fmt::Debug for KForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Extension of a covector pairing to p-forms: determinant of the pairing
/// matrix on decomposables, bilinear in general. Degree 0 multiplies the
/// scalars.
pub fn pair_forms<S: Scalar>(pairing: &Mat<S>, a: &KForm<S>, b: &KForm<S>) -> S {
    assert_eq!(a.degree(), b.degree(), "pairing of unequal degrees");
    let mut acc = S::zero();
    for (ma, ca) in a.iter() {
        let ia = mask_indices(ma);
        for (mb, cb) in b.iter() {
            let ib = mask_indices(mb);
            let det = if ia.is_empty() {
                S::one()
            } else {
                Mat::from_fn(ia.len(), ia.len(), |r, c| {
                    pairing.at(ia[r] - 1, ib[c] - 1).clone()
                })
                .det()
            };
            acc += ca.clone() * cb.clone() * det;
        }
    }
    acc
}

/// Star operator against an arbitrary covector pairing and volume coefficient
/// (`vol = vol_coeff · e^{123456}`): the unique operator with
/// `a ∧ star(b) = pairing(a,b) · vol` on equal degrees.
///
/// With the metric pairing g⁻¹ and vol = κ³/3! this is the Hodge star `*`;
/// with the κ-pairing (−κ⁻¹ on covectors) it is the symplectic star `★`.
pub fn star_with<S: Scalar>(pairing: &Mat<S>, vol_coeff: &S, a: &KForm<S>) -> KForm<S> {
    let p = a.degree();
    let mut out = KForm::zero(DIM - p);
    for full in 0..=FULL_MASK {
        if full.count_ones() as usize != p {
            continue;
        }
        let basis = {
            let mut f = KForm::zero(p);
            f.add_term(full, S::one());
            f
        };
        let coeff = pair_forms(pairing, &basis, a);
        if coeff.is_zero() {
            continue;
        }
        let comp = FULL_MASK & !full;
        let sign = merge_sign(full, comp);
        let c = vol_coeff.clone() * coeff;
        out.add_term(comp, if sign < 0 { -c } else { c });
    }
    out
}

/// Recover `x` with `x ∧ factor = target`, if it exists (and is unique up to
/// the kernel of the wedge map, in which case the minimal representative with
/// free coordinates zero is returned; all uses in this crate are against
/// injective wedge maps). Returns `None` when `target` is off the image by
/// more than the tolerance.
pub fn solve_wedge_factor<S: Scalar>(
    target: &KForm<S>,
    factor: &KForm<S>,
    x_degree: usize,
    tol: f64,
) -> Option<KForm<S>> {
    let t_degree = x_degree + factor.degree();
    if target.degree() != t_degree || t_degree > DIM {
        return None;
    }
    let x_masks: Vec<u8> = (0..=FULL_MASK)
        .filter(|m| m.count_ones() as usize == x_degree)
        .collect();
    let t_masks: Vec<u8> = (0..=FULL_MASK)
        .filter(|m| m.count_ones() as usize == t_degree)
        .collect();
    let t_pos: BTreeMap<u8, usize> = t_masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let mut system: Mat<S> = Mat::zeros(t_masks.len(), x_masks.len());
    for (col, &xm) in x_masks.iter().enumerate() {
        let mut b = KForm::zero(x_degree);
        b.add_term(xm, S::one());
        for (tm, c) in b.wedge(factor).iter() {
            *system.at_mut(t_pos[&tm], col) = c.clone();
        }
    }
    let rhs: Vec<S> = t_masks.iter().map(|&m| target.coeff_mask(m)).collect();
    let x = system.solve_vec(&rhs, tol)?;
    let mut out = KForm::zero(x_degree);
    for (i, c) in x.into_iter().enumerate() {
        out.add_term(x_masks[i], c);
    }
    // Exact mode already guarantees consistency; in float mode `solve`
    // verified the residual against the tolerance.
    Some(out)
}

/// All degree-p masks in ascending order — the canonical basis enumeration
/// used by decomposition solves.
pub fn degree_masks(p: usize) -> Vec<u8> {
    (0..=FULL_MASK)
        .filter(|m| m.count_ones() as usize == p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    type Q = BigRational;
    type F = KForm<Q>;

    fn q(n: i64, d: i64) -> Q {
        <Q as Scalar>::from_ratio(n, d)
    }

    fn kappa0() -> F {
        F::from_terms(
            2,
            [
                (q(1, 1), vec![1, 2]),
                (q(1, 1), vec![3, 4]),
                (q(1, 1), vec![5, 6]),
            ],
        )
    }

    fn omega0() -> F {
        F::from_terms(
            3,
            [
                (q(1, 1), vec![1, 3, 5]),
                (q(-1, 1), vec![1, 4, 6]),
                (q(-1, 1), vec![2, 4, 5]),
                (q(-1, 1), vec![2, 3, 6]),
            ],
        )
    }

    fn j_omega0() -> F {
        F::from_terms(
            3,
            [
                (q(-1, 1), vec![2, 4, 6]),
                (q(1, 1), vec![2, 3, 5]),
                (q(1, 1), vec![1, 4, 5]),
                (q(1, 1), vec![1, 3, 6]),
            ],
        )
    }

    /// Standard J on covectors: J e¹ = −e², J e² = e¹, and likewise on the
    /// other two pairs.
    fn j_cov() -> Mat<Q> {
        Mat::from_int_rows(&[
            &[0, -1, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0, 0],
            &[0, 0, 0, -1, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 0, 0, -1],
            &[0, 0, 0, 0, 1, 0],
        ])
    }

    /// κ-pairing on covectors for the standard κ₀ (equals the κ₀ matrix).
    fn kappa_pairing() -> Mat<Q> {
        Mat::from_int_rows(&[
            &[0, 1, 0, 0, 0, 0],
            &[-1, 0, 0, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, -1, 0, 0, 0],
            &[0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, -1, 0],
        ])
    }

    #[test]
    fn term_normalizes_index_order() {
        // One inversion: e³∧e¹∧e⁵ = −e¹³⁵; (5,3,1) is also odd.
        assert_eq!(F::term(q(1, 1), &[3, 1, 5]), -F::basis(&[1, 3, 5]));
        assert_eq!(F::term(q(1, 1), &[5, 3, 1]), -F::basis(&[1, 3, 5]));
        assert_eq!(F::term(q(1, 1), &[3, 5, 1]), F::basis(&[1, 3, 5]));
        assert_eq!(F::basis(&[2, 1]), -F::basis(&[1, 2]));
    }

    #[test]
    fn wedge_basics() {
        let e1 = F::basis(&[1]);
        let e2 = F::basis(&[2]);
        assert_eq!(e1.wedge(&e2), F::basis(&[1, 2]));
        assert_eq!(e2.wedge(&e1), -F::basis(&[1, 2]));
        assert!(e1.wedge(&e1).is_zero());

        let k = kappa0();
        let k3 = k.wedge(&k).wedge(&k);
        assert_eq!(k3, F::term(q(6, 1), &[1, 2, 3, 4, 5, 6]));

        assert!(omega0().wedge(&k).is_zero());
        // Graded commutativity p=2, q=3: sign (−1)^6 = +1.
        let a = kappa0();
        let b = omega0();
        assert_eq!(a.wedge(&b), b.wedge(&a));
    }

    #[test]
    fn wedge_overflow_clamps_to_zero() {
        let k2 = kappa0().wedge(&kappa0());
        let top = k2.wedge(&omega0());
        assert_eq!(top.degree(), DIM);
        assert!(top.is_zero());
    }

    #[test]
    fn contraction_is_first_slot() {
        assert_eq!(kappa0().contract_basis(1), F::basis(&[2]));
        assert_eq!(kappa0().contract_basis(2), -F::basis(&[1]));
        // Term-by-term on the reference 3-form: only e135 and e245 contain
        // the index 5, each contributing with the sign of its slot position.
        let expected = F::basis(&[1, 3]) - F::basis(&[2, 4]);
        assert_eq!(omega0().contract_basis(5), expected);
        assert!(omega0().contract_basis(5).contract_basis(5).is_zero());
    }

    #[test]
    fn contraction_is_an_antiderivation() {
        let a = F::basis(&[1, 3]) + F::term(q(2, 1), &[2, 5]);
        let b = F::basis(&[4]) - F::term(q(3, 1), &[6]);
        let v: Vec<Q> = (0..DIM as i64).map(|i| q(i - 2, 3)).collect();
        let lhs = a.wedge(&b).contract_vector(&v);
        let rhs = a.contract_vector(&v).wedge(&b)
            + a.wedge(&b.contract_vector(&v)); // deg a = 2: (−1)² = +1
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_matches_coefficients() {
        let f = omega0();
        let mut basis_vecs = Vec::new();
        for i in [1usize, 3, 5] {
            let mut v = vec![q(0, 1); DIM];
            v[i - 1] = q(1, 1);
            basis_vecs.push(v);
        }
        assert_eq!(f.eval(&basis_vecs), q(1, 1));
    }

    #[test]
    fn pairing_extends_by_determinants() {
        let g_inv: Mat<Q> = Mat::identity(6);
        assert_eq!(pair_forms(&g_inv, &F::basis(&[1, 2]), &F::basis(&[1, 2])), q(1, 1));
        assert_eq!(pair_forms(&g_inv, &omega0(), &omega0()), q(4, 1));
        assert_eq!(
            pair_forms(&kappa_pairing(), &F::basis(&[1]), &F::basis(&[2])),
            q(1, 1)
        );
        assert_eq!(pair_forms(&kappa_pairing(), &kappa0(), &kappa0()), q(3, 1));
    }

    #[test]
    fn hodge_star_standard_examples() {
        let g_inv: Mat<Q> = Mat::identity(6);
        let one = q(1, 1);
        assert_eq!(
            star_with(&g_inv, &one, &F::basis(&[1])),
            F::basis(&[2, 3, 4, 5, 6])
        );
        let k = kappa0();
        let half_k2 = k.wedge(&k).scale(&q(1, 2));
        assert_eq!(star_with(&g_inv, &one, &k), half_k2);
        assert_eq!(star_with(&g_inv, &one, &omega0()), j_omega0());
        // Involution signs on a 6-dimensional Riemannian space: ** = id on
        // even degrees, −id on odd.
        for (form, sign) in [(kappa0(), 1i64), (omega0(), -1)] {
            let twice = star_with(&g_inv, &one, &star_with(&g_inv, &one, &form));
            assert_eq!(twice, form.scale(&q(sign, 1)));
        }
    }

    #[test]
    fn symplectic_star_examples() {
        let kp = kappa_pairing();
        let one = q(1, 1);
        assert_eq!(star_with(&kp, &one, &omega0()), -omega0());
        let k = kappa0();
        assert_eq!(star_with(&kp, &one, &k), k.wedge(&k).scale(&q(1, 2)));
        // ★ is an involution on every degree.
        for form in [
            F::basis(&[1]),
            F::basis(&[1, 3]) + kappa0(),
            omega0() + F::basis(&[1, 2, 3]),
            kappa0().wedge(&kappa0()),
        ] {
            let twice = star_with(&kp, &one, &star_with(&kp, &one, &form));
            assert_eq!(twice, form);
        }
    }

    #[test]
    fn star_commutes_with_j_for_standard_structure() {
        let g_inv: Mat<Q> = Mat::identity(6);
        let kp = kappa_pairing();
        let one = q(1, 1);
        for form in [omega0(), F::basis(&[1, 2, 3]), F::basis(&[1]).wedge(&kappa0())] {
            let sj = star_with(&g_inv, &one, &form.substitute(&j_cov()));
            let js = star_with(&g_inv, &one, &form).substitute(&j_cov());
            let sympl = star_with(&kp, &one, &form);
            assert_eq!(sj, sympl);
            assert_eq!(js, sympl);
        }
    }

    #[test]
    fn j_action_on_forms() {
        let j = j_cov();
        assert_eq!(kappa0().substitute(&j), kappa0());
        assert_eq!(omega0().substitute(&j), j_omega0());
        // J² = (−1)^p on degree p.
        let three = omega0() + F::basis(&[1, 2, 4]);
        assert_eq!(three.substitute(&j).substitute(&j), -three.clone());
        let two = kappa0() + F::basis(&[1, 5]);
        assert_eq!(two.substitute(&j).substitute(&j), two);
    }

    #[test]
    fn substitution_is_multiplicative() {
        let m: Mat<Q> = Mat::from_int_rows(&[
            &[1, 2, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 1],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 3, 0, 1, 0],
            &[0, 0, 0, 0, 0, 1],
        ]);
        let a = F::basis(&[1, 3]) - F::term(q(2, 1), &[4, 5]);
        let b = F::basis(&[2]) + F::basis(&[6]);
        assert_eq!(
            a.wedge(&b).substitute(&m),
            a.substitute(&m).wedge(&b.substitute(&m))
        );
    }

    #[test]
    fn wedge_factor_recovery() {
        let k = kappa0();
        let alpha = F::basis(&[1]) - F::term(q(3, 2), &[4]);
        let target = alpha.wedge(&k);
        let recovered = solve_wedge_factor(&target, &k, 1, 0.0).unwrap();
        assert_eq!(recovered, alpha);

        let beta = F::basis(&[1, 2]) - F::basis(&[3, 4]);
        let target = beta.wedge(&k);
        assert_eq!(solve_wedge_factor(&target, &k, 2, 0.0).unwrap(), beta);

        // A target off the image of α ↦ α∧Ω is rejected: Ω-effective 4-forms
        // span only a 6-dimensional subspace of Λ⁴.
        let off = F::basis(&[1, 2, 3, 4]) + F::basis(&[1, 2, 3, 5]);
        let omega = omega0();
        let sols: Vec<_> = (0..1)
            .filter_map(|_| solve_wedge_factor(&off, &omega, 1, 0.0))
            .collect();
        assert!(sols.is_empty() || !sols[0].wedge(&omega).approx_eq(&off, 1e-12));
    }

    #[test]
    fn display_is_readable() {
        let f = omega0();
        // Terms print in ascending bitmask order.
        assert_eq!(format!("{f}"), "e135 - e245 - e236 - e146");
        let g = F::term(q(-1, 2), &[1, 2]) + F::term(q(1, 6), &[3, 4]);
        assert_eq!(format!("{g}"), "-1/2 e12 + 1/6 e34");
        assert_eq!(format!("{}", F::zero(2)), "0");
    }
}
