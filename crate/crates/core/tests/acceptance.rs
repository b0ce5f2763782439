//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs as a plain binary so each line reaches the terminal unbuffered;
//! the process exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use matfact::continuant::word_matrix_by_continuants;
use matfact::density::{density_report, vanishing_space_basis, vanishing_space_dim, variety_baseline};
use matfact::orbit::{a1_families, act_v, apply_unit_action, orbit_points, window_modulus, OrbitOptions};
use matfact::sl2::word_to_matrix;
use matfact::varieties::{
    convert_shape, enumerate_points_bounded, factor_euclid, pad, reverse_point, solve_k3, unit_product_points,
    EnumOptions, HeightBound, K3Solution,
};
use matfact::{Elem, Mat2, PointTuple, Ring, Shape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn int(rng: &mut ChaCha8Rng, n: i64) -> Elem {
    Elem::from_i64(rng.gen_range(-n..=n))
}

fn ints(rng: &mut ChaCha8Rng, k: usize, n: i64) -> Vec<Elem> {
    (0..k).map(|_| int(rng, n)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

/// 1,000 integer tuples with `k ≤ 12`, `|xᵢ| ≤ 50`.
fn corpus() -> Vec<Vec<Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..1000)
        .map(|_| {
            let k = rng.gen_range(0..=12);
            ints(&mut rng, k, 50)
        })
        .collect()
}

fn continuant_product() -> Outcome {
    let start = Instant::now();
    let bad = corpus().iter().filter(|xs| word_matrix_by_continuants(xs) != word_to_matrix(Shape::Lower, xs)).count();
    ensure(bad == 0, || format!("{bad} mismatches"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("1000 tuples in {:.2?}", start.elapsed()))
}

fn determinant() -> Outcome {
    let bad = corpus().iter().filter(|xs| !word_matrix_by_continuants(xs).det().is_one()).count();
    ensure(bad == 0, || format!("{bad} determinants differ from 1"))?;
    Ok("1000 tuples".into())
}

fn klein_relations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s2 = Elem::sqrt_of(2);
    let mut failures = 0;
    for i in 0..1000 {
        let k = rng.gen_range(1..=8);
        let xs: Vec<Elem> = if i % 2 == 0 {
            ints(&mut rng, k, 9)
        } else {
            (0..k).map(|_| &int(&mut rng, 5) + &(&int(&mut rng, 5) * &s2)).collect()
        };
        let a = word_to_matrix(Shape::Lower, &xs);
        let ok = a.is_sl2()
            && a.prime().prime() == a
            && a.transpose().transpose() == a
            && a.star().star() == a
            && a.prime().transpose() == a.star()
            && a.transpose().star() == a.prime()
            && a.star().prime() == a.transpose()
            && a.prime().star() == a.transpose()
            && a.transpose().prime() == a.star()
            && a.star().transpose() == a.prime()
            && [a.prime(), a.transpose(), a.star()].iter().all(Mat2::is_sl2);
        if !ok {
            failures += 1;
        }
    }
    ensure(failures == 0, || format!("{failures} matrices violate a relation"))?;
    Ok("1000 matrices over Z and Z[sqrt(2)]".into())
}

fn shape_transport() -> Outcome {
    let z = Ring::integers();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let shapes = [Shape::Lower, Shape::Upper, Shape::D];
    let mut checked = 0;
    for parity in 0..2 {
        for n in 0..500 {
            let k = 2 * rng.gen_range(0..=5) + parity;
            let shape = shapes[n % 3];
            let xs = ints(&mut rng, k, 20);
            let a = word_to_matrix(shape, &xs);
            let p = PointTuple::new(&z, shape, xs);
            ensure(p.is_member(&a), || format!("corpus point {:?} not a member", p.entries()))?;
            for target in shapes {
                let (m, q) = convert_shape(&p, &a, target).map_err(|e| format!("convert_shape: {e}"))?;
                ensure(q.is_member(&m), || format!("converted point fails for {target:?}"))?;
            }
            let (m, q) = reverse_point(&p, &a).map_err(|e| format!("reverse_point: {e}"))?;
            ensure(q.is_member(&m), || "reversed point fails".into())?;
            checked += 1;
        }
    }
    Ok(format!("{checked} points, both parities"))
}

fn window_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 1000 {
        let k = rng.gen_range(4..=8);
        let xs: Vec<Elem> = (0..k).map(|_| Elem::ratio(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=12))).collect();
        let i = rng.gen_range(1..=k - 3);
        if window_modulus(&xs, i).unwrap().is_zero() {
            continue;
        }
        let v = Elem::from_i64(1i64 << rng.gen_range(0..=10));
        let v = if rng.gen() { v } else { -v };
        let v = if rng.gen() { v } else { v.inv().unwrap() };
        let ys = apply_unit_action(&xs, i, &v).map_err(|e| e.to_string())?;
        ensure(word_to_matrix(Shape::Lower, &xs) == word_to_matrix(Shape::Lower, &ys), || {
            format!("product changed for {xs:?}, window {i}, v={v}")
        })?;
        done += 1;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("1000 windows in {:.2?}", start.elapsed()))
}

fn integrality_transfer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut summary = Vec::new();
    for spec in ["Z[1/2]", "Z[sqrt(2)]"] {
        let ring: Ring = spec.parse().unwrap();
        let s = ring.sqrt_d();
        let mut points = 0;
        while points < 200 {
            let xs: Vec<Elem> = (0..4)
                .map(|_| {
                    let x = int(&mut rng, 12);
                    match &s {
                        Some(s) => &x + &(&int(&mut rng, 4) * s),
                        None => &x * &Elem::ratio(1, 1i64 << rng.gen_range(0..=2)),
                    }
                })
                .collect();
            let alpha = window_modulus(&xs, 1).unwrap();
            if alpha.is_zero() || ring.is_unit(&alpha) {
                continue;
            }
            let a = word_to_matrix(Shape::Lower, &xs);
            let p = PointTuple::new(&ring, Shape::Lower, xs);
            let found = ring.units_congruent_one(&alpha, 3).map_err(|e| format!("{spec}: {e}"))?;
            ensure(found.units.len() == 3, || format!("{spec}: only {} units for alpha={alpha}", found.units.len()))?;
            for v in &found.units {
                ensure(ring.congruent_mod(v, &Elem::one(), &alpha).unwrap(), || format!("{v} not 1 mod {alpha}"))?;
                let q = act_v(&ring, &p, 1, v).map_err(|e| e.to_string())?;
                ensure(q.is_integral() && q.is_member(&a), || {
                    format!("{spec}: v={v} on {:?} gives {:?}", p.entries(), q.entries())
                })?;
            }
            points += 1;
        }
        summary.push(format!("{spec}: 200 points x 3 units"));
    }
    Ok(summary.join(", "))
}

fn oracle_agreement() -> Outcome {
    let z = Ring::integers();
    let mut matrices: Vec<Mat2> = Vec::new();
    for x1 in -3..=3 {
        for x2 in -3..=3 {
            for x3 in -3..=3 {
                matrices
                    .push(word_to_matrix(Shape::Lower, &[Elem::from_i64(x1), Elem::from_i64(x2), Elem::from_i64(x3)]));
            }
        }
    }
    matrices.sort_by_key(|m| format!("{m:?}"));
    matrices.dedup();
    let realized = matrices.len();
    // c = 0, a ≠ 1: no length-3 word at all
    for b in -3..=3 {
        matrices.push(Mat2::from_ints(-1, 0, b, -1));
    }
    let bound = HeightBound::new(3);
    let in_box = |xs: &[Elem]| xs.iter().all(|x| x.is_integer() && x.height() <= 3.into());
    let (mut unique, mut family, mut empty) = (0, 0, 0);
    for a in &matrices {
        let enumerated: BTreeSet<Vec<Elem>> =
            enumerate_points_bounded(&z, a, 3, Shape::Lower, &bound, &EnumOptions::default())
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(PointTuple::into_entries)
                .collect();
        let solved: BTreeSet<Vec<Elem>> = match solve_k3(&z, a).map_err(|e| e.to_string())? {
            K3Solution::Unique(p) => {
                unique += 1;
                ensure(in_box(p.entries()), || format!("{a:?}: unique point outside the box"))?;
                [p.into_entries()].into()
            }
            K3Solution::Family { b } => {
                family += 1;
                (-3..=3).map(|t| K3Solution::family_point(&b, &Elem::from_i64(t))).filter(|xs| in_box(xs)).collect()
            }
            K3Solution::Empty => {
                empty += 1;
                BTreeSet::new()
            }
        };
        ensure(solved == enumerated, || format!("{a:?}: closed form {solved:?} vs search {enumerated:?}"))?;
    }
    ensure(family > 0 && empty > 0, || "family or empty case not exercised".into())?;
    Ok(format!("{realized} realized matrices + 7 empty ({unique} unique, {family} family, {empty} empty)"))
}

fn euclid_round_trip() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..500 {
        let k = rng.gen_range(0..=10);
        let a = word_to_matrix(Shape::Lower, &ints(&mut rng, k, 20));
        let w = factor_euclid(&a).map_err(|e| format!("{a:?}: {e}"))?;
        ensure(w.to_matrix() == a, || format!("{a:?}: word evaluates elsewhere"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("500 matrices in {:.2?}", start.elapsed()))
}

fn density_k9() -> Outcome {
    let start = Instant::now();
    let ring: Ring = "Z[1/2]".parse().unwrap();
    let a = Mat2::from_ints(2, 3, 3, 5);
    let seed = PointTuple::new(&ring, Shape::Lower, vec![Elem::one(); 4]);
    let seed = pad(&seed, &a, 9).map_err(|e| e.to_string())?;
    let opts = OrbitOptions { walk_seed: Some(1), ..Default::default() };
    let orbit = orbit_points(&ring, &a, &seed, 120, &opts).map_err(|e| e.to_string())?;
    let points: Vec<PointTuple> = orbit.points.into_iter().map(|o| o.point).collect();
    let distinct: BTreeSet<&[Elem]> = points.iter().map(|p| p.entries()).collect();
    ensure(distinct.len() >= 120, || format!("only {} distinct points", distinct.len()))?;
    ensure(points.iter().all(|p| p.is_integral() && p.is_member(&a)), || "orbit point fails".into())?;
    let baseline = variety_baseline(&ring, &a, 9, 2, 2024).map_err(|e| e.to_string())?;
    let report = density_report(&points, 2, baseline).map_err(|e| e.to_string())?;
    ensure(report.monomials == 55, || format!("{} monomials", report.monomials))?;
    ensure(report.dense_at_d, || format!("nullity {} vs baseline {}", report.nullity, report.baseline))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{} points, nullity {} = baseline {}, {:.2?}",
        report.points,
        report.nullity,
        report.baseline,
        start.elapsed()
    ))
}

fn unit_variety() -> Outcome {
    let ring: Ring = "Z[1/2]".parse().unwrap();
    let points: Vec<Vec<Elem>> = (0..10)
        .map(|n| unit_product_points(&ring, 2, &[Elem::from_i64(1 << n)]))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let nullity = vanishing_space_dim(&points, 2).map_err(|e| e.to_string())?;
    let basis = vanishing_space_basis(&points, 2).map_err(|e| e.to_string())?;
    // monomials 1, x₁, x₂, x₁², x₁x₂, x₂²
    let curve: Vec<Elem> = [-1, 0, 0, 0, 1, 0].into_iter().map(Elem::from_i64).collect();
    ensure(nullity == 1 && basis == vec![curve], || format!("nullity {nullity}, basis {basis:?}"))?;
    Ok("vanishing space = span(x1*x2 - 1)".into())
}

fn a1_reducibility() -> Outcome {
    let z = Ring::integers();
    let a = Mat2::from_ints(1, 3, 2, 7);
    for u in -10..=10 {
        let (f, g) = a1_families(&z, &a, &Elem::from_i64(u)).map_err(|e| e.to_string())?;
        ensure(f.is_member(&a) && g.is_member(&a), || format!("family member fails at u={u}"))?;
    }
    let bound = HeightBound::new(8);
    let found = enumerate_points_bounded(&z, &a, 4, Shape::Lower, &bound, &EnumOptions::default())
        .map_err(|e| e.to_string())?;
    let off = found.iter().filter(|p| !p.entries()[1].is_zero() && !p.entries()[2].is_zero()).count();
    ensure(off == 0, || format!("{off} points off both families"))?;
    ensure(!found.is_empty(), || "search found nothing".into())?;
    Ok(format!("families verified for |u| <= 10; {} points in |x| <= 8, all on x2=0 or x3=0", found.len()))
}

fn padding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let rings: [Ring; 2] = [Ring::integers(), "Z[1/2]".parse().unwrap()];
    let mut checked = 0;
    for n in 0..400 {
        let ring = &rings[n % 2];
        let k = rng.gen_range(0..=8);
        let xs = ints(&mut rng, k, 15);
        let a = word_to_matrix(Shape::Lower, &xs);
        let p = PointTuple::new(ring, Shape::Lower, xs);
        for extra in 1..=5 {
            let q = pad(&p, &a, k + extra).map_err(|e| e.to_string())?;
            ensure(q.is_member(&a) && q.k() == k + extra, || format!("padding {:?} to {}", p.entries(), k + extra))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} padded points"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("continuant closed form equals the product", continuant_product),
        ("determinant identity", determinant),
        ("Klein relations", klein_relations),
        ("shape and reversal transport", shape_transport),
        ("window action preserves the product", window_identity),
        ("integrality transfer for v = 1 mod alpha", integrality_transfer),
        ("closed form k=3 agrees with search", oracle_agreement),
        ("Euclidean round trip", euclid_round_trip),
        ("density witness at k=9", density_k9),
        ("unit-variety density", unit_variety),
        ("a=1 reducibility", a1_reducibility),
        ("padding monotonicity", padding),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
