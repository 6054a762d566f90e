use super::sextic_tables::{SextTerm, RESULTANT_X2, STATED_X2};
use super::Locus;
use crate::dd::Dd;
use crate::families::BicentricParams;
use crate::geometry::Point;
use crate::real::Real;

/// Bivariate polynomial `Σ c · x^i y^j` with double-double coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    terms: Vec<(u32, u32, Dd)>,
}

impl Poly2 {
    pub fn new(mut terms: Vec<(u32, u32, Dd)>) -> Self {
        terms.sort_by_key(|t| (t.0, t.1));
        let mut merged: Vec<(u32, u32, Dd)> = Vec::with_capacity(terms.len());
        for (i, j, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += c,
                _ => merged.push((i, j, c)),
            }
        }
        Poly2 { terms: merged }
    }

    fn from_table(table: &[SextTerm], p: &BicentricParams) -> Self {
        let pw = |v: f64, k: u32| (0..k).fold(Dd::ONE, |acc, _| acc * Dd::from_f64(v));
        Poly2::new(
            table
                .iter()
                .map(|&(i, j, a, b, c, k)| (i, j, Dd::from_f64(k) * pw(p.big_r, a) * pw(p.r, b) * pw(p.d, c)))
                .collect(),
        )
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().filter(|t| t.2 != Dd::ZERO).map(|t| t.0 + t.1).max().unwrap_or(0)
    }

    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.terms.iter().find(|t| t.0 == i && t.1 == j).map_or(0.0, |t| t.2.to_f64())
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.iter().fold(Dd::ZERO, |s, t| s + t.2 * t.2).sqrt().to_f64()
    }

    pub fn eval<T: Real>(&self, p: Point<T>) -> T {
        let deg = self.degree() as usize;
        let mut xp = vec![T::one(); deg + 1];
        let mut yp = vec![T::one(); deg + 1];
        for k in 1..=deg {
            xp[k] = xp[k - 1] * p.x;
            yp[k] = yp[k - 1] * p.y;
        }
        let mut s = T::zero();
        for &(i, j, c) in &self.terms {
            if (i + j) as usize <= deg {
                s += T::from_f64(c.hi()) * xp[i as usize] * yp[j as usize];
                s += T::from_f64(c.lo()) * xp[i as usize] * yp[j as usize];
            }
        }
        s
    }
}

/// The bic-II barycenter sextic as stated in closed form (729(x²+y²)³ − …),
/// coefficients kept exactly as given.
pub fn stated_x2_sextic(p: &BicentricParams) -> Poly2 {
    Poly2::from_table(STATED_X2, p)
}

/// The sextic factor of the resultant eliminating `(x1, y1)` between the
/// barycenter parametrization and `x1² + y1² = R²`.
pub fn resultant_x2_sextic(p: &BicentricParams) -> Poly2 {
    Poly2::from_table(RESULTANT_X2, p)
}

/// Max of `|f(p)| / (‖f‖ · max(1, ρ)⁶)` over the points, with ρ the largest
/// sample radius.
pub fn sextic_residual<T: Real>(f: &Poly2, pts: &[Point<T>]) -> f64 {
    let rho = pts.iter().map(|p| p.norm().to_f64()).fold(1.0, f64::max);
    let scale = f.coeff_norm() * rho.powi(f.degree() as i32);
    pts.iter().map(|p| f.eval(*p).to_f64().abs() / scale).fold(0.0, f64::max)
}

/// Normalized residual of the stated sextic on an X2 locus of the bic-II
/// family with parameters `p`.
pub fn verify_implicit_sextic_x2(p: &BicentricParams, l: &Locus) -> f64 {
    sextic_residual(&stated_x2_sextic(p), l.precise_points())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyConfig;
    use crate::loci::{trace_locus, Tracked};

    /// Closed-form barycenter of the bic-II triangle at P1 = (x1, y1).
    fn x2_param(p: &BicentricParams, t: f64) -> Point<Dd> {
        let (c, s) = <Dd as Real>::unit(t);
        let big_r = Dd::from_f64(p.big_r);
        let (r, d) = (Dd::from_f64(p.r), Dd::from_f64(p.d));
        let (x1, y1) = (big_r * c, big_r * s);
        let (r2, d2, rr2) = (big_r * big_r, d * d, r * r);
        let k = |v: f64| Dd::from_f64(v);
        let base = r2 + d2 - k(2.0) * d * x1;
        let den = k(3.0) * base * base;
        let x = (-(k(4.0) * d2 * x1 * y1 * y1) - (d2 * d2 + (k(6.0) * r2 - k(4.0) * rr2) * d2 + r2 * r2 - k(4.0) * r2 * rr2) * x1
            + k(4.0) * r2 * d * (d2 + r2 - k(2.0) * rr2))
            / den;
        let y = -((-(k(4.0) * d2 * x1 * x1) + k(8.0) * d2 * d * x1 - k(3.0) * d2 * d2 + (-(k(2.0) * r2) + k(4.0) * rr2) * d2 + r2 * r2
            - k(4.0) * r2 * rr2)
            * y1)
            / den;
        Point::new(x, y)
    }

    #[test]
    fn parametrization_matches_traced_barycenter() {
        let cfg = FamilyConfig::bic_ii(1.0, 0.2, 0.3).unwrap();
        let p = *cfg.bicentric().unwrap();
        let l = trace_locus(&cfg, Tracked::Center(2), 64).unwrap();
        for s in &l.samples {
            assert!(s.p.dist(x2_param(&p, s.t).to_f64()) < 1e-14);
        }
    }

    #[test]
    fn resultant_sextic_vanishes_on_barycenter() {
        for (r, d) in [(0.2, 0.3), (0.15, 0.4), (0.25, 0.2)] {
            let p = BicentricParams::new(1.0, r, d);
            let f = resultant_x2_sextic(&p);
            assert_eq!(f.degree(), 6);
            let pts: Vec<Point<Dd>> = (0..97).map(|i| x2_param(&p, 0.065 * i as f64)).collect();
            assert!(sextic_residual(&f, &pts) < 1e-26, "{r} {d}");
            // off the curve
            let off: Vec<Point<Dd>> = pts.iter().map(|q| *q + Point::new(Dd::from_f64(1e-3), Dd::ZERO)).collect();
            assert!(sextic_residual(&f, &off) > 1e-8);
        }
    }

    #[test]
    fn stated_sextic_leading_form() {
        let p = BicentricParams::new(1.0, 0.2, 0.3);
        let f = stated_x2_sextic(&p);
        assert_eq!(f.degree(), 6);
        assert_eq!(f.coeff(6, 0), 729.0);
        assert_eq!(f.coeff(4, 2), 3.0 * 729.0);
        assert_eq!(f.coeff(0, 6), 729.0);
    }
}
