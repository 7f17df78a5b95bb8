//! Continued fractions attached to rational tropical angles.
//!
//! * [`regular_cf`]: floor-based expansion `q = 1/(w₁ + 1/(s₁ + 1/(w₂ + …)))`,
//!   normalised to odd length.  Its entries alternate between caustic
//!   weights `w_j` and front length gradients `s_j` of the angle with
//!   cotangent `q`.
//! * [`hj_cf`]: ceiling-based (Hirzebruch–Jung) expansion
//!   `q = 1/(i₁ − 1/(i₂ − …))`, whose entries are the negated
//!   self-intersections of the minimal resolution.
//! * [`matrix_recursion`]: the unimodular matrices `U_n` whose columns are
//!   the front vertices `q_n` and Klein-polygon vertices `p_n`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{ensure, Error, Result};
use crate::lattice::{int, rat_int, wedge, Int, LatticeVec, Rat};
use crate::trig::{self, Angle};
use crate::wavefront::{self, ConvexDomain};

/// Odd-length list `[w₁, s₁, w₂, …, w_k]` of positive denominators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegularCF(Vec<Int>);

/// List of Hirzebruch–Jung denominators, each at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HJCF(Vec<Int>);

impl RegularCF {
    /// Validates odd length and positivity.
    pub fn new(entries: Vec<Int>) -> Result<Self> {
        if entries.len().is_multiple_of(2) || entries.iter().any(|e| !e.is_positive()) {
            return Err(Error::Invalid(format!("not an odd-length positive list: {}", show(&entries))));
        }
        Ok(RegularCF(entries))
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    /// The weights `w₁, …, w_k` (even positions).
    pub fn weights(&self) -> Vec<Int> {
        self.0.iter().step_by(2).cloned().collect()
    }

    /// The gradients `s₁, …, s_{k−1}` (odd positions).
    pub fn gradients(&self) -> Vec<Int> {
        self.0.iter().skip(1).step_by(2).cloned().collect()
    }

    /// The rational number the expansion represents.
    pub fn value(&self) -> Rat {
        let mut acc: Option<Rat> = None;
        for e in self.0.iter().rev() {
            let d = rat_int(e) + acc.map(|a| a.recip()).unwrap_or_else(Rat::zero);
            acc = Some(d);
        }
        acc.expect("nonempty").recip()
    }
}

impl HJCF {
    pub fn new(entries: Vec<Int>) -> Result<Self> {
        if entries.is_empty() || entries.iter().any(|e| e < &int(2)) {
            return Err(Error::Invalid(format!("entries must be at least 2: {}", show(&entries))));
        }
        Ok(HJCF(entries))
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    /// The rational number the expansion represents.
    pub fn value(&self) -> Rat {
        let mut acc: Option<Rat> = None;
        for e in self.0.iter().rev() {
            let d = rat_int(e) - acc.map(|a| a.recip()).unwrap_or_else(Rat::zero);
            acc = Some(d);
        }
        acc.expect("nonempty").recip()
    }
}

fn show(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl std::fmt::Display for RegularCF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&show(&self.0))
    }
}

impl std::fmt::Display for HJCF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&show(&self.0))
    }
}

fn check_unit_interval(q: &Rat) -> Result<()> {
    if q.is_positive() && q < &Rat::one() {
        Ok(())
    } else {
        Err(Error::OutOfRange(q.to_string()))
    }
}

/// Floor-based expansion of `q ∈ (0, 1)`, normalised to odd length by
/// rewriting a final `n` as `(n − 1, 1)`.
pub fn regular_cf(q: &Rat) -> Result<RegularCF> {
    check_unit_interval(q)?;
    let mut out = Vec::new();
    let mut x = q.recip();
    loop {
        let a = x.floor();
        out.push(a.to_integer());
        let frac = &x - &a;
        if frac.is_zero() {
            break;
        }
        x = frac.recip();
    }
    if out.len() % 2 == 0 {
        let last = out.pop().expect("nonempty");
        out.push(last - 1);
        out.push(Int::one());
    }
    Ok(RegularCF(out))
}

/// Ceiling-based expansion of `q ∈ (0, 1)` with minus signs.
pub fn hj_cf(q: &Rat) -> Result<HJCF> {
    check_unit_interval(q)?;
    let mut out = Vec::new();
    let mut x = q.recip();
    loop {
        let a = x.ceil();
        out.push(a.to_integer());
        let gap = &a - &x;
        if gap.is_zero() {
            break;
        }
        x = gap.recip();
    }
    Ok(HJCF(out))
}

/// Replaces every `w` by `w − 1` entries `2` and every `s` by the single
/// entry `s + 2`.
pub fn regular_to_hj(r: &RegularCF) -> Result<HJCF> {
    let mut out = Vec::new();
    for (i, e) in r.0.iter().enumerate() {
        if i % 2 == 0 {
            let mut k: Int = e - 1;
            while k.is_positive() {
                out.push(int(2));
                k -= 1;
            }
        } else {
            out.push(e + 2);
        }
    }
    if out.is_empty() {
        // [1] stands for q = 1, which is not in the open unit interval.
        return Err(Error::OutOfRange("1".into()));
    }
    HJCF::new(out)
}

/// A 2×2 integer matrix stored row-major.
pub type CFMatrix = [[Int; 2]; 2];

/// One stage of the matrix recursion: `U_n = [q_n | p_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFStep {
    pub u: CFMatrix,
    pub front_vertex: LatticeVec,
    pub hull_vertex: LatticeVec,
}

/// Full recursion for a rational slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRecursion {
    /// `(U_n, q_n, p_n)` for `n = 0, …, k − 1`.
    pub steps: Vec<CFStep>,
    /// The last hull vertex `p_k = w_k q_{k−1} + p_{k−1} = (denominator, numerator)`.
    pub final_hull_vertex: LatticeVec,
}

fn mat_mul(a: &CFMatrix, b: &CFMatrix) -> CFMatrix {
    [
        [&a[0][0] * &b[0][0] + &a[0][1] * &b[1][0], &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1]],
        [&a[1][0] * &b[0][0] + &a[1][1] * &b[1][0], &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1]],
    ]
}

/// Determinant of a [`CFMatrix`].
pub fn cf_det(m: &CFMatrix) -> Int {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

/// Runs `U_n = U_{n−1} [[w_n, 1], [1, 0]] [[s_n, 1], [1, 0]]` from the identity.
pub fn matrix_recursion(alpha: &Rat) -> Result<MatrixRecursion> {
    let cf = regular_cf(alpha)?;
    Ok(recursion_from_cf(&cf))
}

pub(crate) fn recursion_from_cf(cf: &RegularCF) -> MatrixRecursion {
    let e = cf.entries();
    let mut u: CFMatrix = [[int(1), int(0)], [int(0), int(1)]];
    let column = |m: &CFMatrix, j: usize| LatticeVec::new(m[0][j].clone(), m[1][j].clone());
    let mut steps = vec![CFStep { u: u.clone(), front_vertex: column(&u, 0), hull_vertex: column(&u, 1) }];
    let mut j = 0;
    while j + 1 < e.len() {
        let w = &e[j];
        let s = &e[j + 1];
        let f: CFMatrix = [[w * s + 1, w.clone()], [s.clone(), int(1)]];
        u = mat_mul(&u, &f);
        steps.push(CFStep { u: u.clone(), front_vertex: column(&u, 0), hull_vertex: column(&u, 1) });
        j += 2;
    }
    let w = &e[e.len() - 1];
    let last = steps.last().expect("nonempty");
    let final_hull_vertex = &last.front_vertex.scale(w) + &last.hull_vertex;
    MatrixRecursion { steps, final_hull_vertex }
}

/// Continued-fraction data read off the geometry of an angle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleCF {
    pub cf: RegularCF,
    /// Caustic weights, from the first leg towards the second.
    pub weights: Vec<Int>,
    /// Length gradients of the bounded front edges, same order.
    pub gradients: Vec<Int>,
}

/// Reads the weights from the cone caustic and the gradients from a
/// simulation of the cone, and checks that interleaving them gives
/// `regular_cf(cotangent)`.
pub fn cf_from_angle(a: &Angle) -> Result<AngleCF> {
    let ta = trig::cotangent(a);
    if ta.m.is_zero() {
        return Err(Error::RightAngleExcluded);
    }
    let cf = regular_cf(&Rat::new(ta.m.clone(), ta.n.clone()))?;

    let mut weights: Vec<Int> = trig::cone_caustic(a).into_iter().map(|r| r.weight).collect();
    let cone = ConvexDomain::two_rays(vec![a.apex.clone()], a.leg2.clone(), a.leg1.clone())?;
    let trace = wavefront::simulate(&cone)?;
    // The traversal runs from the second leg to the first one.
    let mut gradients = trace.initial_gradients()?;
    gradients.reverse();
    if a.reversed {
        weights.reverse();
        gradients.reverse();
    }
    let mut interleaved = Vec::new();
    for (i, w) in weights.iter().enumerate() {
        interleaved.push(w.clone());
        if let Some(s) = gradients.get(i) {
            interleaved.push(s.clone());
        }
    }
    ensure(interleaved.len() == weights.len() + gradients.len() && interleaved == cf.entries(), || {
        format!("geometric data {} disagrees with continued fraction {}", show(&interleaved), cf)
    })?;
    Ok(AngleCF { cf, weights, gradients })
}

/// Self-intersection numbers `[−i₁, −i₂, …]` of the minimal resolution,
/// computed from the boundary lattice points `z_{−1}, z₀, z₁, …` of the
/// Klein polygon of the cone spanned by `−leg1` and `leg2` through
/// `z_{k−2} + z_k = i_k z_{k−1}`.
pub fn minimal_resolution(a: &Angle) -> Result<Vec<Int>> {
    if a.determinant().is_one() {
        return Err(Error::RightAngleExcluded);
    }
    let (l1, l2) = a.original_legs();
    let z = trig::sail_points(&l1.opposite(), l2);
    let mut out = Vec::new();
    for w in z.windows(3) {
        let sum = &w[0] + &w[2];
        ensure(wedge(&sum, &w[1]).is_zero(), || format!("z-recursion broke at {}", w[1]))?;
        let i = if !w[1].x.is_zero() { &sum.x / &w[1].x } else { &sum.y / &w[1].y };
        ensure(w[1].scale(&i) == sum && i >= int(2), || format!("bad resolution entry {i}"))?;
        out.push(-i);
    }
    Ok(out)
}

/// Reduced `m/n` pairs with `0 < m < n ≤ bound`.
pub fn reduced_fractions(bound: u32) -> Vec<(Int, Int)> {
    let mut out = Vec::new();
    for n in 2..=bound {
        for m in 1..n {
            if m.gcd(&n) == 1 {
                out.push((Int::from(m), Int::from(n)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{primitive, rat};

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn regular_examples() {
        assert_eq!(regular_cf(&rat(4, 7)).unwrap().entries(), ints(&[1, 1, 3]).as_slice());
        assert_eq!(regular_cf(&rat(1, 2)).unwrap().entries(), ints(&[2]).as_slice());
        assert_eq!(regular_cf(&rat(3, 7)).unwrap().entries(), ints(&[2, 2, 1]).as_slice());
        assert!(matches!(regular_cf(&rat(1, 1)), Err(Error::OutOfRange(_))));
        assert!(matches!(regular_cf(&rat(0, 1)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn hj_examples() {
        assert_eq!(hj_cf(&rat(3, 7)).unwrap().entries(), ints(&[3, 2, 2]).as_slice());
        assert_eq!(hj_cf(&rat(1, 2)).unwrap().entries(), ints(&[2]).as_slice());
        assert_eq!(hj_cf(&rat(4, 7)).unwrap().entries(), ints(&[2, 4]).as_slice());
        assert!(hj_cf(&rat(-1, 3)).is_err());
    }

    #[test]
    fn conversion_examples() {
        let r = RegularCF::new(ints(&[1, 1, 3])).unwrap();
        assert_eq!(regular_to_hj(&r).unwrap().entries(), ints(&[3, 2, 2]).as_slice());
        for d in 2..8 {
            let r = RegularCF::new(vec![int(d)]).unwrap();
            assert_eq!(regular_to_hj(&r).unwrap().entries(), vec![int(2); (d - 1) as usize].as_slice());
        }
        for d in 3..8 {
            let r = RegularCF::new(vec![int(1), int(d - 2), int(1)]).unwrap();
            assert_eq!(regular_to_hj(&r).unwrap().entries(), [int(d)].as_slice());
        }
    }

    #[test]
    fn recursion_examples() {
        let rec = matrix_recursion(&rat(4, 7)).unwrap();
        assert_eq!(rec.steps[0].u, [[int(1), int(0)], [int(0), int(1)]]);
        assert_eq!(rec.steps[0].front_vertex, LatticeVec::new(1, 0));
        assert_eq!(rec.steps[0].hull_vertex, LatticeVec::new(0, 1));
        assert_eq!(rec.steps[1].u, [[int(2), int(1)], [int(1), int(1)]]);
        assert_eq!(rec.steps[1].front_vertex, LatticeVec::new(2, 1));
        assert_eq!(rec.steps[1].hull_vertex, LatticeVec::new(1, 1));
        assert_eq!(rec.final_hull_vertex, LatticeVec::new(7, 4));
    }

    #[test]
    fn recursion_lengths_match_denominators() {
        for (m, n) in reduced_fractions(30) {
            let q = Rat::new(m.clone(), n.clone());
            let cf = regular_cf(&q).unwrap();
            let rec = recursion_from_cf(&cf);
            let e = cf.entries();
            assert_eq!(rec.final_hull_vertex, LatticeVec::new(n.clone(), m.clone()));
            for (i, step) in rec.steps.iter().enumerate() {
                assert!(cf_det(&step.u).abs().is_one());
                if i > 0 {
                    let prev = &rec.steps[i - 1];
                    let (_, wlen) = primitive(&(&step.hull_vertex - &prev.hull_vertex)).unwrap();
                    let (_, slen) = primitive(&(&step.front_vertex - &prev.front_vertex)).unwrap();
                    assert_eq!(wlen, e[2 * (i - 1)]);
                    assert_eq!(slen, e[2 * (i - 1) + 1]);
                }
            }
        }
    }

    #[test]
    fn angle_examples() {
        let a = Angle::from_ints((1, 0), (3, 7)).unwrap();
        let data = cf_from_angle(&a).unwrap();
        assert_eq!(data.weights, ints(&[1, 3]));
        assert_eq!(data.gradients, ints(&[1]));
        assert_eq!(data.cf.entries(), ints(&[1, 1, 3]).as_slice());
        assert_eq!(minimal_resolution(&a).unwrap(), ints(&[-3, -2, -2]));

        for d in 3..9 {
            let canonical = Angle::with_cotangent(&int(1), &int(d)).unwrap();
            let data = cf_from_angle(&canonical).unwrap();
            assert_eq!(data.weights, vec![int(d)]);
            assert_eq!(minimal_resolution(&canonical).unwrap(), vec![int(-2); (d - 1) as usize]);
        }

        let a2 = Angle::from_ints((0, 1), (3, 1)).unwrap();
        let data = cf_from_angle(&a2).unwrap();
        assert_eq!(data.weights, ints(&[1, 1]));
        assert_eq!(data.gradients, ints(&[1]));
        assert_eq!(data.cf.value(), rat(2, 3));

        let a1 = Angle::from_ints((0, 1), (2, 1)).unwrap();
        assert_eq!(minimal_resolution(&a1).unwrap(), ints(&[-2]));

        let right = Angle::from_ints((1, 0), (0, 1)).unwrap();
        assert_eq!(cf_from_angle(&right), Err(Error::RightAngleExcluded));
        assert_eq!(minimal_resolution(&right), Err(Error::RightAngleExcluded));
    }

    #[test]
    fn reversed_angle_reads_reversed_data() {
        let a = Angle::from_ints((3, 7), (1, 0)).unwrap();
        let data = cf_from_angle(&a).unwrap();
        assert_eq!(data.cf.value(), rat(2, 7));
        assert_eq!(data.weights, ints(&[3, 1]));
    }
}
