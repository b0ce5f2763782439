use std::collections::BTreeSet;
use std::io::Write;

use matfact::continuant::{lower_target, residuals, vk_membership};
use matfact::density::{density_report, unit_product_baseline, variety_baseline};
use matfact::json::{elem_to_json, mat_from_json, mat_to_json, point_from_json, point_to_json, word_to_json};
use matfact::orbit::{orbit_points, OrbitOptions};
use matfact::varieties::{
    enumerate_points_bounded, factor_euclid, pad, unit_product_points, EnumOptions, HeightBound, DEFAULT_ENUM_CAP,
};
use matfact::{Elem, Mat2, PointTuple, Ring, Shape, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::Failure;

type Out<'a> = &'a mut dyn Write;

fn emit(out: Out, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{v}")?;
    Ok(())
}

fn parse_ring(s: &str) -> Result<Ring, Failure> {
    s.parse().map_err(|e| Failure::invalid(format!("ring {s:?}: {e}")))
}

fn parse_json(s: &str, what: &str) -> Result<Value, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::invalid(format!("{what}: {e}")))
}

fn parse_shape(s: &str) -> Result<Shape, Failure> {
    Shape::from_name(s).ok_or_else(|| Failure::invalid(format!("unknown shape {s:?} (lower, upper or D)")))
}

fn parse_matrix(ring: &Ring, s: &str) -> Result<Mat2, Failure> {
    Ok(mat_from_json(ring, &parse_json(s, "matrix")?)?)
}

fn parse_point(ring: &Ring, s: &str, shape: Shape) -> Result<PointTuple, Failure> {
    Ok(point_from_json(ring, &parse_json(s, "point")?, shape)?)
}

/// `N[,E[,Q]]`.
fn parse_bound(s: &str) -> Result<HeightBound, Failure> {
    let bad = || Failure::invalid(format!("bound {s:?}: expected N[,E[,Q]]"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.is_empty() || parts.len() > 3 {
        return Err(bad());
    }
    let n: u64 = parts[0].parse().map_err(|_| bad())?;
    let mut b = HeightBound::new(n);
    if let Some(e) = parts.get(1) {
        b.max_den_exp = e.parse().map_err(|_| bad())?;
    }
    if let Some(q) = parts.get(2) {
        b.max_sqrt_coeff = q.parse().map_err(|_| bad())?;
    }
    Ok(b)
}

/// Re-checks a point right before it is printed.
fn checked(p: &PointTuple, a: &Mat2) -> Result<(), Failure> {
    if vk_membership(a, p.entries(), p.shape()) {
        Ok(())
    } else {
        Err(Failure::invalid(format!("internal error: {:?} failed re-verification", p.entries())))
    }
}

fn integral_word(ring: &Ring, a: &Mat2, w: &Word) -> Result<(), Failure> {
    if w.to_matrix() == *a && w.entries.iter().all(|x| ring.contains(x)) {
        Ok(())
    } else {
        Err(Failure::invalid("internal error: factorization failed re-verification"))
    }
}

pub fn factor(
    out: Out,
    ring: &str,
    matrix: &str,
    k: Option<usize>,
    bound: Option<&str>,
    shape: &str,
    jobs: usize,
) -> Result<(), Failure> {
    let ring = parse_ring(ring)?;
    let a = parse_matrix(&ring, matrix)?;
    let shape = parse_shape(shape)?;
    if !a.is_sl2() {
        return Err(Failure::invalid(format!("determinant is {}, not 1", a.det())));
    }
    let word = match k {
        None => {
            // an upper-start word for A is a lower-start word for A′
            let target = lower_target(&a, shape);
            let w = factor_euclid(&target).map_err(|e| match e {
                matfact::Error::NonIntegerEntries => {
                    Failure::invalid("entries are not integers; pass --k and --bound for a bounded search")
                }
                e => e.into(),
            })?;
            match shape {
                Shape::Lower => w,
                _ => Word::new(shape, w.entries),
            }
        }
        Some(k) => {
            let bound = parse_bound(bound.ok_or_else(|| Failure::invalid("--k needs --bound"))?)?;
            let opts = EnumOptions { cap: DEFAULT_ENUM_CAP, jobs: jobs.max(1) };
            let found = enumerate_points_bounded(&ring, &a, k, shape, &bound, &opts)?;
            let p = found
                .into_iter()
                .next()
                .ok_or_else(|| Failure::empty(format!("no factorization of length {k} inside the bound")))?;
            p.to_word()
        }
    };
    integral_word(&ring, &a, &word)?;
    emit(out, &word_to_json(&ring, &word))
}

pub fn verify(out: Out, ring: &str, matrix: &str, point: &str, shape: &str) -> Result<(), Failure> {
    let ring = parse_ring(ring)?;
    let a = parse_matrix(&ring, matrix)?;
    let p = parse_point(&ring, point, parse_shape(shape)?)?;
    let member = p.is_member(&a);
    let r = residuals(&a, p.entries(), p.shape());
    emit(
        out,
        &json!({
            "member": member,
            "integral": p.is_integral(),
            "shape": p.shape().name(),
            "k": p.k(),
            "residuals": mat_to_json(&ring, &r),
        }),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn orbit(
    out: Out,
    ring: &str,
    matrix: &str,
    point: &str,
    shape: &str,
    count: usize,
    seed: Option<u64>,
    budget: usize,
) -> Result<(), Failure> {
    let ring = parse_ring(ring)?;
    let a = parse_matrix(&ring, matrix)?;
    let start = parse_point(&ring, point, parse_shape(shape)?)?;
    let opts = OrbitOptions { budget, walk_seed: seed, ..Default::default() };
    let report = orbit_points(&ring, &a, &start, count, &opts)?;
    for (i, op) in report.points.iter().enumerate() {
        checked(&op.point, &a)?;
        if !op.point.is_integral() {
            return Err(Failure::invalid("internal error: non-integral orbit point"));
        }
        let prov = &op.provenance;
        emit(
            out,
            &json!({
                "index": i,
                "point": point_to_json(&ring, &op.point),
                "provenance": {
                    "window": prov.window,
                    "action": prov.action.name(),
                    "param": elem_to_json(&ring, &prov.param),
                },
            }),
        )?;
    }
    if !report.stalled.is_empty() {
        let moduli: Vec<String> = report.stalled.iter().map(|m| ring.format(m)).collect();
        eprintln!("matfact: no unit order found for window moduli {}", moduli.join(", "));
    }
    let got = report.points.len();
    if got < count {
        return Err(if report.budget_exhausted {
            Failure::exhausted(format!("budget exhausted after {got} of {count} points"))
        } else {
            Failure::empty(format!("orbit closed after {got} of {count} points"))
        });
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn enumerate(
    out: Out,
    ring: &str,
    matrix: &str,
    k: usize,
    bound: &str,
    shape: &str,
    jobs: usize,
    cap: Option<u128>,
) -> Result<(), Failure> {
    let ring = parse_ring(ring)?;
    let a = parse_matrix(&ring, matrix)?;
    let shape = parse_shape(shape)?;
    let bound = parse_bound(bound)?;
    let opts = EnumOptions { cap: cap.unwrap_or(DEFAULT_ENUM_CAP), jobs: jobs.max(1) };
    let points = enumerate_points_bounded(&ring, &a, k, shape, &bound, &opts)?;
    for p in &points {
        checked(p, &a)?;
        emit(out, &point_to_json(&ring, p))?;
    }
    if points.is_empty() {
        return Err(Failure::empty("no points inside the bound"));
    }
    Ok(())
}

pub struct DensityRequest<'a> {
    pub ring: &'a str,
    pub unit_variety: bool,
    pub matrix: Option<&'a str>,
    pub point: Option<&'a str>,
    pub points: Option<&'a str>,
    pub k: Option<usize>,
    pub degree: u32,
    pub count: usize,
    pub seed: u64,
    pub baseline: Option<usize>,
}

fn is_unit_product_point(ring: &Ring, xs: &[Elem]) -> bool {
    xs.iter().all(|x| ring.contains(x)) && xs.iter().fold(Elem::one(), |acc, x| &acc * x).is_one()
}

pub fn density(out: Out, req: &DensityRequest) -> Result<(), Failure> {
    let ring = parse_ring(req.ring)?;
    let explicit: Option<Vec<PointTuple>> = match req.points {
        None => None,
        Some(s) => {
            let v = parse_json(s, "points")?;
            let list = v.as_array().ok_or_else(|| Failure::invalid("--points must be a JSON array"))?;
            Some(list.iter().map(|p| point_from_json(&ring, p, Shape::Lower)).collect::<Result<_, _>>()?)
        }
    };
    let (points, baseline) = if req.unit_variety {
        let points = match explicit {
            Some(ps) => {
                if let Some(bad) = ps.iter().find(|p| !is_unit_product_point(&ring, p.entries())) {
                    return Err(Failure::invalid(format!(
                        "{:?} is not an integral point of x1*...*xk = 1",
                        bad.entries()
                    )));
                }
                ps
            }
            None => {
                let k = req.k.ok_or_else(|| Failure::invalid("--k is required"))?;
                unit_points(&ring, k, req.count, req.seed)?
            }
        };
        let k = points.first().map(PointTuple::k).ok_or_else(|| Failure::invalid("no points"))?;
        let baseline = match req.baseline {
            Some(b) => b,
            None => unit_product_baseline(k, req.degree, req.seed)?,
        };
        (points, baseline)
    } else {
        let a = parse_matrix(&ring, req.matrix.ok_or_else(|| Failure::invalid("--matrix is required"))?)?;
        let points = match explicit {
            Some(ps) => {
                for p in &ps {
                    if !p.is_member(&a) || !p.is_integral() {
                        return Err(Failure::invalid(format!(
                            "{:?} is not an integral point of the variety",
                            p.entries()
                        )));
                    }
                }
                ps
            }
            None => orbit_cloud(&ring, &a, req)?,
        };
        let first = points.first().ok_or_else(|| Failure::invalid("no points"))?;
        let baseline = match req.baseline {
            Some(b) => b,
            None => variety_baseline(&ring, &lower_target(&a, first.shape()), first.k(), req.degree, req.seed)?,
        };
        (points, baseline)
    };
    let report = density_report(&points, req.degree, baseline)?;
    emit(out, &serde_json::to_value(&report).expect("plain struct"))
}

/// Integral points of `V_k(A)` from a seeded walk started at `--point` or at
/// the Euclidean factorization.
fn orbit_cloud(ring: &Ring, a: &Mat2, req: &DensityRequest) -> Result<Vec<PointTuple>, Failure> {
    let k = req.k.ok_or_else(|| Failure::invalid("--k is required"))?;
    let start = match req.point {
        Some(s) => parse_point(ring, s, Shape::Lower)?,
        None => {
            let w =
                factor_euclid(a).map_err(|e| Failure::invalid(format!("{e}; pass --point with an integral point")))?;
            PointTuple::new(ring, Shape::Lower, w.entries)
        }
    };
    if start.k() > k {
        return Err(Failure::invalid(format!("starting point has length {} > k = {k}", start.k())));
    }
    let start = pad(&start, a, k)?;
    let opts = OrbitOptions { walk_seed: Some(req.seed), ..Default::default() };
    let report = orbit_points(ring, a, &start, req.count, &opts)?;
    if report.points.len() < req.count {
        let got = report.points.len();
        return Err(if report.budget_exhausted {
            Failure::exhausted(format!("budget exhausted after {got} of {} points", req.count))
        } else {
            Failure::empty(format!("orbit closed after {got} of {} points", req.count))
        });
    }
    Ok(report.points.into_iter().map(|o| o.point).collect())
}

/// Distinct points of `x₁⋯x_k = 1` whose first `k − 1` coordinates are
/// products of random powers of the unit generators.
fn unit_points(ring: &Ring, k: usize, count: usize, seed: u64) -> Result<Vec<PointTuple>, Failure> {
    if !ring.has_infinite_units() {
        return Err(Failure::empty(format!("{ring} has finitely many units")));
    }
    let gens = ring.unit_generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count.saturating_mul(100) {
        if out.len() == count {
            break;
        }
        let us: Vec<Elem> = (0..k.saturating_sub(1))
            .map(|_| {
                gens.iter().fold(Elem::one(), |acc, g| {
                    let e = if g == &Elem::from_i64(-1) { rng.gen_range(0..=1) } else { rng.gen_range(-6..=6) };
                    &acc * &g.powi(e).expect("unit")
                })
            })
            .collect();
        let xs = unit_product_points(ring, k, &us)?;
        if seen.insert(xs.clone()) {
            out.push(PointTuple::new(ring, Shape::Lower, xs));
        }
    }
    if out.len() < count {
        return Err(Failure::empty(format!("only {} distinct unit points", out.len())));
    }
    Ok(out)
}

pub fn units(out: Out, ring: &str, modulus: &str, count: usize) -> Result<(), Failure> {
    let ring = parse_ring(ring)?;
    let a = ring.parse_ring_elem(modulus)?;
    let found = ring.units_congruent_one(&a, count)?;
    let fmt = |xs: &[Elem]| xs.iter().map(|x| elem_to_json(&ring, x)).collect::<Vec<_>>();
    let mut v = json!({
        "modulus": elem_to_json(&ring, &a),
        "units": fmt(&found.units),
        "finite": found.finite,
        "stalled": fmt(&found.stalled),
    });
    if ring.is_quadratic() {
        v["fundamental_unit"] = elem_to_json(&ring, &ring.fundamental_unit()?);
    }
    emit(out, &v)?;
    if found.units.is_empty() {
        return Err(Failure::empty("no units congruent to 1"));
    }
    Ok(())
}
