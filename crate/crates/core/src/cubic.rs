//! Constrained third-moment minimization for two-level step functions.
//!
//! The model problem: F equals H on [0,θ) and L on [θ,1]; g = F shifted by
//! δ mass (g = H−(1−θ)δ on the upper piece, L+θδ on the lower) subject to
//! the variance budget θ(1−θ)δ² ≤ η. Minimizing E[g³] over feasible δ has
//! a closed form, and specializing the parameters to a coset matrix turns
//! it into a lower bound on E[g³] in terms of c, n, and ε₁.
//!
//! Everything is exact: the minimizer lives in ℚ[√(θ(1−θ)η)], so the
//! objective is a `QuadExt` and assertions against it never need floats.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rat::{rat, rat_int, sqrt_bounds, QuadExt, Rat};
use crate::{Error, Result};

/// Parameters (θ, H, L, η) of the two-level minimization problem.
#[derive(Clone, PartialEq, Debug)]
pub struct CubicProblem {
    theta: Rat,
    h: Rat,
    l: Rat,
    eta: Rat,
}

impl CubicProblem {
    pub fn new(theta: Rat, h: Rat, l: Rat, eta: Rat) -> Result<Self> {
        if !theta.is_positive() || theta >= Rat::one() {
            return Err(Error::Invalid("theta must lie in (0,1)".into()));
        }
        if l.is_negative() || h <= l {
            return Err(Error::Invalid("need H > L >= 0".into()));
        }
        if eta.is_negative() {
            return Err(Error::Invalid("eta must be non-negative".into()));
        }
        Ok(CubicProblem { theta, h, l, eta })
    }

    pub fn theta(&self) -> &Rat {
        &self.theta
    }

    pub fn high(&self) -> &Rat {
        &self.h
    }

    pub fn low(&self) -> &Rat {
        &self.l
    }

    pub fn eta(&self) -> &Rat {
        &self.eta
    }

    /// θ(1−θ).
    fn theta_var(&self) -> Rat {
        &self.theta * (Rat::one() - &self.theta)
    }
}

/// E[F³] = θH³ + (1−θ)L³.
pub fn ef3(p: &CubicProblem) -> Rat {
    let h3 = &p.h * &p.h * &p.h;
    let l3 = &p.l * &p.l * &p.l;
    &p.theta * h3 + (Rat::one() - &p.theta) * l3
}

/// The objective θ(H−(1−θ)δ)³ + (1−θ)(L+θδ)³ at a field element δ.
pub fn objective_at(p: &CubicProblem, delta: &QuadExt) -> QuadExt {
    let one_minus = Rat::one() - &p.theta;
    let upper = QuadExt::from_rat(p.h.clone()).sub(&delta.scale(&one_minus));
    let lower = QuadExt::from_rat(p.l.clone()).add(&delta.scale(&p.theta));
    let up3 = upper.mul(&upper).mul(&upper);
    let lo3 = lower.mul(&lower).mul(&lower);
    up3.scale(&p.theta).add(&lo3.scale(&one_minus))
}

/// The objective's δ-derivative in factored form:
/// 3θ(1−θ)(δ−(H−L))(L+H−(1−2θ)δ).
pub fn objective_derivative_at(p: &CubicProblem, delta: &QuadExt) -> QuadExt {
    let gap = &p.h - &p.l;
    let first = delta.sub(&QuadExt::from_rat(gap));
    let skew = Rat::one() - rat_int(2) * &p.theta;
    let second = QuadExt::from_rat(&p.l + &p.h).sub(&delta.scale(&skew));
    first.mul(&second).scale(&(rat_int(3) * p.theta_var()))
}

/// Solution of the constrained minimization.
#[derive(Clone, PartialEq, Debug)]
pub struct QPrimeSolution {
    /// The minimizing shift δ* = min(√(η/(θ(1−θ))), H−L).
    pub delta: QuadExt,
    /// Minimum of the objective over the feasible interval.
    pub objective: QuadExt,
    /// True when the variance budget exceeds what δ = H−L uses, so the
    /// constraint is inactive and g collapses to the constant θH+(1−θ)L.
    pub clamped: bool,
}

/// Minimizes the objective over −L/θ ≤ δ ≤ H/(1−θ) with θ(1−θ)δ² ≤ η.
///
/// The derivative is negative left of H−L on the whole feasible interval,
/// so the minimum sits at the largest feasible δ up to H−L. Unclamped, the
/// closed form is E[F³] − 3(H²−L²)√(θ(1−θ)η) + 3((1−θ)H+θL)η
/// − (1−2θ)η/(θ(1−θ))·√(θ(1−θ)η).
pub fn solve_qprime(p: &CubicProblem) -> QPrimeSolution {
    let tv = p.theta_var();
    let gap = &p.h - &p.l;
    let radicand = &tv * &p.eta;
    let delta_free = QuadExt::sqrt_of(radicand.clone()).scale(&tv.recip());
    if !delta_free.le_rat(&gap) {
        let level = &p.theta * &p.h + (Rat::one() - &p.theta) * &p.l;
        let objective = QuadExt::from_rat(&level * &level * &level);
        return QPrimeSolution {
            delta: QuadExt::from_rat(gap),
            objective,
            clamped: true,
        };
    }
    let one_minus = Rat::one() - &p.theta;
    let rational = ef3(p) + rat_int(3) * (&one_minus * &p.h + &p.theta * &p.l) * &p.eta;
    let skew = Rat::one() - rat_int(2) * &p.theta;
    let coeff = -rat_int(3) * (&p.h * &p.h - &p.l * &p.l) - skew * &p.eta / &tv;
    QPrimeSolution {
        delta: delta_free,
        objective: QuadExt::new(rational, coeff, radicand),
        clamped: false,
    }
}

/// Brute numeric minimization of the objective over the feasible interval,
/// by grid scan plus golden-section refinement. Test oracle only.
pub fn numeric_min_objective(p: &CubicProblem, grid: usize) -> f64 {
    let theta = p.theta.to_f64().expect("finite");
    let h = p.h.to_f64().expect("finite");
    let l = p.l.to_f64().expect("finite");
    let eta = p.eta.to_f64().expect("finite");
    let tv = theta * (1.0 - theta);
    let obj = |d: f64| {
        let up = h - (1.0 - theta) * d;
        let lo = l + theta * d;
        theta * up.powi(3) + (1.0 - theta) * lo.powi(3)
    };
    let budget = (eta / tv).sqrt();
    let lo_end = (-l / theta).max(-budget);
    let hi_end = (h / (1.0 - theta)).min(budget);
    let mut best = f64::INFINITY;
    let mut best_d = lo_end;
    for k in 0..=grid {
        let d = lo_end + (hi_end - lo_end) * k as f64 / grid as f64;
        let v = obj(d);
        if v < best {
            best = v;
            best_d = d;
        }
    }
    let step = (hi_end - lo_end) / grid as f64;
    let (mut a, mut b) = ((best_d - step).max(lo_end), (best_d + step).min(hi_end));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let x1 = b - phi * (b - a);
        let x2 = a + phi * (b - a);
        if obj(x1) < obj(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    obj((a + b) / 2.0).min(best)
}

/// E[F³] for the coset specialization: θ = c/n, H = L + (1+1/(n−1)),
/// L = (1−1/(n−1))c. Equals c³(n−2)²(n+1)/(n−1)³ + 3c²n(n−2)/(n−1)³
/// + cn²/(n−1)³.
fn ef3_coset(n: i64, c: &Rat) -> Rat {
    let d = (n - 1) * (n - 1) * (n - 1);
    let c2 = c * c;
    let c3 = &c2 * c;
    c3 * rat((n - 2) * (n - 2) * (n + 1), d)
        + c2 * rat(3 * n * (n - 2), d)
        + c * rat(n * n, d)
}

/// The coset specialization of the minimization problem: θ = c/n,
/// H = (1−1/(n−1))c + (1+1/(n−1)), L = (1−1/(n−1))c,
/// η = (n/(n−1))²·ε₁·c/n.
pub fn eg3_problem(n: usize, c: &Rat, eps1: &Rat) -> Result<CubicProblem> {
    if n < 3 {
        return Err(Error::SmallN { n, min: 3 });
    }
    let ni = n as i64;
    if !c.is_positive() {
        return Err(Error::Invalid("need c > 0 for the coset problem".into()));
    }
    if c > &rat(ni, 2) {
        return Err(Error::Invalid(format!("c = {c} exceeds n/2")));
    }
    if eps1.is_negative() || eps1 > &rat(1, 2) {
        return Err(Error::Invalid(format!("eps1 = {eps1} outside [0, 1/2]")));
    }
    let low = (Rat::one() - rat(1, ni - 1)) * c;
    let high = &low + Rat::one() + rat(1, ni - 1);
    let theta = c / rat_int(ni);
    let eta = rat(ni * ni, (ni - 1) * (ni - 1)) * eps1 * c / rat_int(ni);
    CubicProblem::new(theta, high, low, eta)
}

/// Lower bound on E[g³]: E[F³] − (27/4)(3c²+2c)√ε₁/n, with √ε₁ rounded up
/// so the returned value never exceeds the true bound.
///
/// Requires the regime c ≤ n/2, 0 ≤ ε₁ ≤ 1/2, where the variance budget of
/// the underlying minimization is never clamped.
pub fn eg3_lower_bound(n: usize, c: &Rat, eps1: &Rat) -> Result<Rat> {
    if n < 3 {
        return Err(Error::SmallN { n, min: 3 });
    }
    let ni = n as i64;
    if c.is_negative() || c > &rat(ni, 2) {
        return Err(Error::Invalid(format!("c = {c} outside [0, n/2]")));
    }
    if eps1.is_negative() || eps1 > &rat(1, 2) {
        return Err(Error::Invalid(format!("eps1 = {eps1} outside [0, 1/2]")));
    }
    let (_, sqrt_hi) = sqrt_bounds(eps1, 30);
    let penalty = rat(27, 4) * (rat_int(3) * c * c + rat_int(2) * c) * sqrt_hi / rat_int(ni);
    Ok(ef3_coset(ni, c) - penalty)
}

/// A step function taking finitely many values on [0,θ) and on [θ,1],
/// together with the two-level reference F = (f_high on [0,θ), f_low on
/// [θ,1]). Pieces are (weight, value) pairs; upper weights sum to θ and
/// lower weights to 1−θ.
#[derive(Clone, PartialEq, Debug)]
pub struct StepSpec {
    pub theta: Rat,
    pub f_high: Rat,
    pub f_low: Rat,
    pub upper: Vec<(Rat, Rat)>,
    pub lower: Vec<(Rat, Rat)>,
}

impl StepSpec {
    fn validate(&self) -> Result<()> {
        if !self.theta.is_positive() || self.theta >= Rat::one() {
            return Err(Error::Invalid("theta must lie in (0,1)".into()));
        }
        if self.upper.is_empty() || self.lower.is_empty() {
            return Err(Error::Invalid("both sides need at least one piece".into()));
        }
        for (w, _) in self.upper.iter().chain(&self.lower) {
            if !w.is_positive() {
                return Err(Error::Invalid("piece weights must be positive".into()));
            }
        }
        let up: Rat = self.upper.iter().fold(Rat::zero(), |acc, (w, _)| acc + w);
        if up != self.theta {
            return Err(Error::Invalid("upper weights must sum to theta".into()));
        }
        let lo: Rat = self.lower.iter().fold(Rat::zero(), |acc, (w, _)| acc + w);
        if lo != Rat::one() - &self.theta {
            return Err(Error::Invalid("lower weights must sum to 1-theta".into()));
        }
        Ok(())
    }
}

/// Before/after moments for averaging a step function over its two sides.
#[derive(Clone, PartialEq, Debug)]
pub struct AveragingMoments {
    /// E[g] (averaging preserves it).
    pub mean: Rat,
    /// E[g³] before averaging.
    pub g3: Rat,
    /// E[ḡ³] after replacing each side by its average.
    pub avg_g3: Rat,
    /// E[(g−F)²] before.
    pub dist_sq: Rat,
    /// E[(ḡ−F)²] after.
    pub avg_dist_sq: Rat,
}

/// Exact before/after moments of the averaging step.
pub fn averaging_moments(spec: &StepSpec) -> Result<AveragingMoments> {
    spec.validate()?;
    let cube = |x: &Rat| x * x * x;
    let sq = |x: &Rat| x * x;
    let mut mean = Rat::zero();
    let mut g3 = Rat::zero();
    let mut dist_sq = Rat::zero();
    for (side, f_ref) in [(&spec.upper, &spec.f_high), (&spec.lower, &spec.f_low)] {
        for (w, v) in side.iter() {
            mean += w * v;
            g3 += w * cube(v);
            dist_sq += w * sq(&(v - f_ref));
        }
    }
    let one_minus = Rat::one() - &spec.theta;
    let up_avg = spec.upper.iter().fold(Rat::zero(), |acc, (w, v)| acc + w * v) / &spec.theta;
    let lo_avg = spec.lower.iter().fold(Rat::zero(), |acc, (w, v)| acc + w * v) / &one_minus;
    let avg_g3 = &spec.theta * cube(&up_avg) + &one_minus * cube(&lo_avg);
    let avg_dist_sq =
        &spec.theta * sq(&(&up_avg - &spec.f_high)) + &one_minus * sq(&(&lo_avg - &spec.f_low));
    Ok(AveragingMoments { mean, g3, avg_g3, dist_sq, avg_dist_sq })
}

/// True iff averaging weakly decreases both E[g³] and E[(g−F)²]: the two
/// inequalities that reduce the general problem to two-level functions.
pub fn averaging_reduction_check(spec: &StepSpec) -> Result<bool> {
    let m = averaging_moments(spec)?;
    Ok(m.avg_g3 <= m.g3 && m.avg_dist_sq <= m.dist_sq)
}
