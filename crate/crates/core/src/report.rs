//! Seeded verification report for the geometric claims about the sphere of
//! normalized 3x3 matrices.
//!
//! Every check reports a single violation value, normalized so that a value
//! at or below zero means the check passed with that much margin. Runs are
//! deterministic: a fixed seed yields byte-identical reports.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::decomp::nearest_orthogonal;
use crate::error::{Error, Result};
use crate::matrix::{cofactor_matrix, gram_schmidt, DenseMatrix};
use crate::rng::Rng;
use crate::sphere::{
    angular_distance, grad_det_sphere, m4_point, m5_ray, to_sphere, wedge_norm, SphericalPoint,
};
use crate::svd::rank_of_default;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    /// Worst violation observed; at most zero when the check passes.
    pub worst_violation: f64,
}

/// Deterministic record of the whole verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Plain-text table.
    pub fn to_table_string(&self) -> String {
        let mut out = format!(
            "geometry verification (trials={}, seed={}, tol={:e})\n",
            self.trials, self.seed, self.tol
        );
        out.push_str(&format!(
            "{:<26}{:<8}{}\n",
            "check", "result", "worst_violation"
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "{:<26}{:<8}{:.16e}\n",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.worst_violation
            ));
        }
        out.push_str(if self.all_passed() {
            "all checks passed\n"
        } else {
            "some checks FAILED\n"
        });
        out
    }

    /// Line-oriented form `name<TAB>pass|fail<TAB>worst_violation` with 17
    /// significant digits.
    pub fn to_machine_string(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{}\t{}\t{:.16e}\n",
                c.name,
                if c.pass { "pass" } else { "fail" },
                c.worst_violation
            ));
        }
        out
    }
}

/// Runs every check with `trials` samples apiece (sample counts that the
/// claims themselves fix, like the 1000-point triangle edges, stay fixed).
pub fn geometry_report(trials: usize, seed: u64, tol: f64) -> Result<Report> {
    if trials == 0 {
        return Err(Error::ParamOutOfRange { name: "trials", value: 0.0 });
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::ParamOutOfRange { name: "tol", value: tol });
    }
    let mut rng = Rng::new(seed);
    let checks = vec![
        det_bounds(trials, &mut rng)?,
        grad_cofactor(trials, &mut rng)?,
        lemma1_diagonal_tangency(trials, &mut rng)?,
        fibre_radius()?,
        wedge_range(trials, &mut rng)?,
        ray_eighth_circle(trials, &mut rng)?,
        m4_focusing()?,
        equivariance(trials, &mut rng)?,
        gs_witness(&mut rng)?,
    ];
    Ok(Report { trials, seed, tol, checks })
}

fn check(name: &'static str, worst_violation: f64) -> CheckResult {
    CheckResult { name, pass: worst_violation <= 0.0, worst_violation }
}

/// |det| <= 1 on the sphere, and |det| close to 1 only close to O(3).
fn det_bounds(trials: usize, rng: &mut Rng) -> Result<CheckResult> {
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..trials {
        let a = sample_sphere_point(rng, 3);
        worst = worst.max(a.matrix().determinant()?.abs() - (1.0 + 1e-12));

        // Probe the near-equality regime next to the orthogonal group.
        let q = rng.orthogonal(3);
        let noise = rng.normal_matrix(3, 3).scaled(1e-4);
        let near = to_sphere(&q.add(&noise))?;
        let det = near.matrix().determinant()?.abs();
        worst = worst.max(det - (1.0 + 1e-12));
        if det > 1.0 - 1e-5 {
            let u = SphericalPoint::new(nearest_orthogonal(near.matrix(), false)?)?;
            worst = worst.max(angular_distance(&near, &u)? - 1e-2);
        }
    }
    Ok(check("det_bounds", worst))
}

/// Cofactor matrix against central finite differences of det (h = 1e-6).
fn grad_cofactor(trials: usize, rng: &mut Rng) -> Result<CheckResult> {
    let h = 1e-6;
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..trials {
        let a = rng.normal_matrix(3, 3);
        let cof = cofactor_matrix(&a)?;
        let scale = cof.max_abs().max(1.0);
        for r in 0..3 {
            for s in 0..3 {
                let mut plus = a.clone();
                plus[(r, s)] += h;
                let mut minus = a.clone();
                minus[(r, s)] -= h;
                let fd = (plus.determinant()? - minus.determinant()?) / (2.0 * h);
                worst = worst.max((cof[(r, s)] - fd).abs() / scale - 1e-6);
            }
        }
    }
    Ok(check("grad_cofactor", worst))
}

/// The det gradient at diagonal points stays diagonal (tangent to the great
/// 2-sphere of diagonal matrices).
fn lemma1_diagonal_tangency(trials: usize, rng: &mut Rng) -> Result<CheckResult> {
    let mut worst = f64::NEG_INFINITY;
    let mut done = 0;
    while done < trials {
        let d = DenseMatrix::from_diag(&[rng.normal(), rng.normal(), rng.normal()]);
        let p = match to_sphere(&d) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let g = grad_det_sphere(&p)?;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    worst = worst.max(g[(i, j)].abs() - 1e-12);
                }
            }
        }
        done += 1;
    }
    Ok(check("lemma1_diagonal_tangency", worst))
}

/// The widest angular reach of the fibre at the identity: the maximum
/// distance from I to the det = 0 boundary of the diagonal triangle equals
/// arccos(1/sqrt(3)). The three edges are sampled at 1000 points each.
fn fibre_radius() -> Result<CheckResult> {
    let id = SphericalPoint::new(DenseMatrix::identity(3))?;
    let samples = 1000;
    let mut max_dist = f64::NEG_INFINITY;
    for edge in 0..3 {
        for i in 0..samples {
            let phi = (PI / 2.0) * i as f64 / (samples - 1) as f64;
            let (u, v) = (3f64.sqrt() * phi.cos(), 3f64.sqrt() * phi.sin());
            let mut d = [0.0; 3];
            d[(edge + 1) % 3] = u;
            d[(edge + 2) % 3] = v;
            let p = SphericalPoint::new(DenseMatrix::from_diag(&d))?;
            max_dist = max_dist.max(angular_distance(&id, &p)?);
        }
    }
    let target = (1.0 / 3f64.sqrt()).acos();
    Ok(check("fibre_radius", (max_dist - target).abs() - 1e-6))
}

/// 0 <= wedge norm <= 3/2 on singular points of the sphere.
fn wedge_range(trials: usize, rng: &mut Rng) -> Result<CheckResult> {
    let mut worst = f64::NEG_INFINITY;
    let mut record = |w: f64| {
        worst = worst.max((-w).max(w - 1.5) - 1e-9);
    };
    let half = (1.5f64).sqrt();
    let m5_template = DenseMatrix::from_diag(&[half, half, 0.0]);
    let mut done = 0;
    while done < trials {
        // A generic rank <= 2 point, a rank-1 point, and a best-of-rank-2
        // point per trial.
        let x = rng.normal_matrix(3, 2);
        let y = rng.normal_matrix(2, 3);
        let generic = match to_sphere(&x.matmul(&y)) {
            Ok(p) => p,
            Err(_) => continue,
        };
        record(wedge_norm(generic.matrix())?);

        let rank1 = m4_point(&rng.unit_vector(3), &rng.unit_vector(3))?;
        record(wedge_norm(rank1.matrix())?);

        let u = rng.rotation(3);
        let v = rng.rotation(3);
        record(wedge_norm(&u.matmul(&m5_template).matmul(&v.transpose()))?);
        done += 1;
    }
    Ok(check("wedge_range", worst))
}

/// Rays off the best-of-rank-2 stratum are arcs of great circles with
/// angular length pi/4.
fn ray_eighth_circle(trials: usize, rng: &mut Rng) -> Result<CheckResult> {
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..trials {
        let phi = rng.uniform() * 2.0 * PI;
        let (a, b) = (phi.cos(), phi.sin());
        for i in 0..=20 {
            let t = FRAC_PI_4 * i as f64 / 20.0;
            let p = m5_ray(a, b, t)?;
            worst = worst.max((p.matrix().frobenius_norm() - 3f64.sqrt()).abs() - 1e-10);
        }
        let length =
            angular_distance(&m5_ray(a, b, 0.0)?, &m5_ray(a, b, FRAC_PI_4)?)?;
        worst = worst.max((length - FRAC_PI_4).abs() - 1e-10);
    }
    Ok(check("ray_eighth_circle", worst))
}

/// 64 equally spaced ray directions reach 64 distinct rank-1 endpoints.
fn m4_focusing() -> Result<CheckResult> {
    let mut endpoints = Vec::with_capacity(64);
    for j in 0..64 {
        let phi = 2.0 * PI * j as f64 / 64.0;
        endpoints.push(m5_ray(phi.cos(), phi.sin(), FRAC_PI_4)?);
    }
    let mut min_sep = f64::INFINITY;
    for i in 0..endpoints.len() {
        for j in i + 1..endpoints.len() {
            min_sep = min_sep.min(endpoints[i].matrix().max_abs_diff(endpoints[j].matrix()));
        }
    }
    Ok(check("m4_focusing", 1e-6 - min_sep))
}

/// The nearest-orthogonal map commutes with the two-sided rotation action.
fn equivariance(trials: usize, rng: &mut Rng) -> Result<CheckResult> {
    let mut worst = f64::NEG_INFINITY;
    let mut done = 0;
    while done < trials {
        let a = rng.normal_matrix(3, 3);
        if rank_of_default(&a)? < 3 {
            continue;
        }
        let u = rng.rotation(3);
        let v = rng.rotation(3);
        let lhs = nearest_orthogonal(&u.matmul(&a).matmul(&v.transpose()), false)?;
        let rhs = u.matmul(&nearest_orthogonal(&a, false)?).matmul(&v.transpose());
        worst = worst.max(lhs.max_abs_diff(&rhs) - 1e-10);
        done += 1;
    }
    Ok(check("equivariance", worst))
}

/// Gram-Schmidt, by contrast, is not conjugation-equivariant: a witness pair
/// with entrywise deviation above 1e-3 must exist among 1000 samples.
fn gs_witness(rng: &mut Rng) -> Result<CheckResult> {
    let mut best: f64 = 0.0;
    for _ in 0..1000 {
        let a = rng.normal_matrix(2, 2);
        let gs_a = match gram_schmidt(&a) {
            Ok(q) => q,
            Err(_) => continue,
        };
        let theta = rng.uniform() * 2.0 * PI;
        let r = DenseMatrix::from_vec(
            2,
            2,
            vec![theta.cos(), -theta.sin(), theta.sin(), theta.cos()],
        )
        .expect("rotation entries are finite");
        let lhs = match gram_schmidt(&r.matmul(&a).matmul(&r.transpose())) {
            Ok(q) => q,
            Err(_) => continue,
        };
        let rhs = r.matmul(&gs_a).matmul(&r.transpose());
        best = best.max(lhs.max_abs_diff(&rhs));
        if best > 1e-3 {
            break;
        }
    }
    Ok(check("gs_witness", 1e-3 - best))
}

/// A pseudo-uniform point of the sphere (normalized Gaussian matrix).
fn sample_sphere_point(rng: &mut Rng, n: usize) -> SphericalPoint {
    loop {
        if let Ok(p) = to_sphere(&rng.normal_matrix(n, n)) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let report = geometry_report(100, 42, 1e-8).unwrap();
        for c in &report.checks {
            assert!(c.pass, "{} failed with violation {}", c.name, c.worst_violation);
            assert!(c.worst_violation <= 0.0);
        }
        assert!(report.all_passed());
        assert_eq!(report.checks.len(), 9);
    }

    #[test]
    fn single_trial_runs() {
        let report = geometry_report(1, 7, 1e-8).unwrap();
        assert_eq!(report.checks.len(), 9);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = geometry_report(50, 11, 1e-8).unwrap();
        let b = geometry_report(50, 11, 1e-8).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_table_string(), b.to_table_string());
        assert_eq!(a.to_machine_string(), b.to_machine_string());
    }

    #[test]
    fn machine_format_is_line_oriented() {
        let report = geometry_report(5, 1, 1e-8).unwrap();
        let text = report.to_machine_string();
        let expected_names = [
            "det_bounds",
            "grad_cofactor",
            "lemma1_diagonal_tangency",
            "fibre_radius",
            "wedge_range",
            "ray_eighth_circle",
            "m4_focusing",
            "equivariance",
            "gs_witness",
        ];
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 9);
        for (line, name) in lines.iter().zip(expected_names) {
            let fields: Vec<&str> = line.split('\t').collect();
            assert_eq!(fields.len(), 3);
            assert_eq!(fields[0], name);
            assert!(fields[1] == "pass" || fields[1] == "fail");
            let value: f64 = fields[2].parse().unwrap();
            assert!(value.is_finite());
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            geometry_report(0, 1, 1e-8),
            Err(Error::ParamOutOfRange { .. })
        ));
        assert!(matches!(
            geometry_report(10, 1, 0.0),
            Err(Error::ParamOutOfRange { .. })
        ));
    }
}
