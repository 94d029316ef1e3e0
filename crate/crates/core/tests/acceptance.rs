//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Set `ACCEPTANCE_ONLY=1,5,9` to run a subset.

mod common;

use idoneal::arith;
use idoneal::classifier::{
    c2_prime, c_n_squared, classify_idoneal, classify_slender, compute_d_set, compute_d_sets, f_squared, idoneal_numbers,
    in_d_set, is_slender, kappa_bound, ClassifyOptions, Parity,
};
use idoneal::enriques::{covers_enriques, enumerate_exceptional, Verdict};
use idoneal::enumeration::{aut_order, is_isometric};
use idoneal::genus::twigs;
use idoneal::lattice::{discriminant_group, e8, etilde, hyperbolic_plane, lambda_minus, parse_lattice};
use idoneal::mass::{mass, mass_ratio, ratio_factors};
use idoneal::representatives::{representatives, RepOptions};
use idoneal::{genus_of, GenusSymbol, IntLattice, TorsionForm};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(t <= limit, format!("{what} took {:.2?} (limit {:.0?})", t, limit))
}

fn e8_positive() -> IntLattice {
    e8().rescale(-1).unwrap()
}

fn certify(g: &GenusSymbol) -> Result<usize, String> {
    let set = representatives(g, &RepOptions::default()).map_err(|e| e.to_string())?;
    ensure(set.is_closed(), format!("representatives of {g} not closed"))?;
    let mut acc = num_rational::BigRational::from_integer(0.into());
    for l in &set.representatives {
        acc += num_rational::BigRational::new(1.into(), aut_order(l).into());
    }
    ensure(acc == mass(g), format!("Σ 1/|Aut| = {acc} differs from mass {}", mass(g)))?;
    Ok(set.class_number())
}

fn criterion1() -> Outcome {
    let cases = [
        (e8_positive(), "1/696729600", 696_729_600u128),
        (IntLattice::diagonal(&[1; 8]).unwrap(), "1/10321920", 10_321_920u128),
    ];
    let mut notes = Vec::new();
    for (l, want, aut) in cases {
        let g = genus_of(&l);
        let t = Instant::now();
        let m = mass(&g);
        within(t.elapsed(), Duration::from_secs(1), "mass")?;
        ensure(m.to_string() == want, format!("mass {m}, expected {want}"))?;
        ensure(aut_order(&l) == aut, format!("|Aut| = {}, expected {aut}", aut_order(&l)))?;
        let h = certify(&g)?;
        notes.push(format!("{m} ({h} class)"));
    }
    Ok(notes.join(", "))
}

fn criterion2() -> Outcome {
    let t = Instant::now();
    let f = genus_of(&IntLattice::diagonal(&[1; 9]).unwrap());
    let i8 = genus_of(&IntLattice::diagonal(&[1; 8]).unwrap());
    let e = genus_of(&e8_positive());
    let ts = twigs(&f);
    let keys: Vec<_> = ts.iter().map(|g| g.key()).collect();
    ensure(ts.len() == 2 && keys.contains(&i8.key()) && keys.contains(&e.key()), format!("twigs {ts:?}"))?;
    ensure(is_slender(&i8), "8[1] not slender")?;
    ensure(!is_slender(&e), "E8 slender")?;
    within(t.elapsed(), Duration::from_secs(10), "twigs")?;
    Ok("twigs {8[1], E8}, slender true/false".into())
}

fn criterion3() -> Outcome {
    let opts = ClassifyOptions::default();
    let want = [(13, 61, 17), (14, 19, 8), (15, 4, 3), (16, 1, 1)];
    let mut notes = Vec::new();
    for (n, s, d) in want {
        let r = classify_slender(n, &opts);
        let got = (r.count(), r.max_det().unwrap_or(0));
        ensure(got == (s, d as i128), format!("n={n}: got {got:?}, expected ({s}, {d})"))?;
        notes.push(format!("S{n}={s} d{n}={d}"));
    }
    Ok(notes.join(" "))
}

fn criterion4() -> Outcome {
    let opts = ClassifyOptions::default();
    let mut notes = Vec::new();
    for (r, want) in [(13, 1), (12, 1), (11, 4), (10, 6)] {
        let t = Instant::now();
        let rep = classify_idoneal(r, &opts).map_err(|e| e.to_string())?;
        ensure(rep.is_complete(), format!("r={r}: budget exhausted on {} genera", rep.budget_limited.len()))?;
        ensure(rep.genera.len() == want, format!("r={r}: {} genera, expected {want}", rep.genera.len()))?;
        notes.push(format!("I{r}={want} ({:.0?})", t.elapsed()));
    }
    Ok(notes.join(" "))
}

fn rank2_report() -> Result<Vec<GenusSymbol>, String> {
    let opts = ClassifyOptions { bound2: 2000, ..ClassifyOptions::default() };
    let rep = classify_idoneal(2, &opts).map_err(|e| e.to_string())?;
    ensure(rep.is_complete(), "rank 2 scan incomplete")?;
    Ok(rep.genera.into_iter().map(|g| g.genus).collect())
}

fn criterion5() -> Outcome {
    let gs = rank2_report()?;
    let max = gs.iter().map(|g| g.det).max().unwrap_or(0);
    ensure(gs.len() == 65 && max == 1848, format!("{} genera, max det {max}", gs.len()))?;
    let nums = idoneal_numbers(2000);
    ensure(nums.len() == 65 && nums.last() == Some(&1848), format!("idoneal numbers {}", nums.len()))?;
    let dets: Vec<u64> = {
        let mut v: Vec<u64> = gs.iter().map(|g| g.det as u64).collect();
        v.sort_unstable();
        v
    };
    ensure(dets == nums, "genus determinants differ from the idoneal numbers")?;
    Ok("65 genera, max det 1848".into())
}

fn criterion6() -> Outcome {
    let opts = ClassifyOptions::default();
    let rank1: Vec<GenusSymbol> =
        classify_idoneal(1, &opts).map_err(|e| e.to_string())?.genera.into_iter().map(|g| g.genus).collect();
    let e11 = enumerate_exceptional(11, &rank1).map_err(|e| e.to_string())?;
    let e10 = enumerate_exceptional(10, &rank2_report()?).map_err(|e| e.to_string())?;
    ensure(e11.len() == 1, format!("E11 = {}", e11.len()))?;
    ensure(e10.len() == 65, format!("E10 = {}", e10.len()))?;
    ensure(e11.iter().chain(&e10).all(|r| !r.half.is_even()), "an even half")?;
    Ok("E11=1 E10=65, all halves odd".into())
}

fn criterion7() -> Outcome {
    let t = Instant::now();
    let lm = lambda_minus();
    ensure(TorsionForm::of_even_lattice(&lm).is_isomorphic(&TorsionForm::u(1).times(5)), "q(Λ⁻) ≇ 5u1")?;
    ensure(lm.signature() == (2, 10), format!("signature {:?}", lm.signature()))?;
    let et = etilde();
    ensure(et.is_even() && et.rank() == 8 && et.determinant() == 64, "Ẽ: rank, parity or det")?;
    ensure(TorsionForm::of_even_lattice(&et).is_isomorphic(&TorsionForm::u(1).times(3)), "q(Ẽ) ≇ 3u1")?;
    within(t.elapsed(), Duration::from_secs(1), "structure checks")?;
    Ok("q(Λ⁻)=5u1 sign (2,10); q(Ẽ)=3u1 det 64".into())
}

fn criterion8() -> Outcome {
    let t = Instant::now();
    let opts = ClassifyOptions::default();
    let u = hyperbolic_plane();
    let cases = [
        (lambda_minus(), Verdict::Covers, Some("(xii)")),
        (parse_lattice("U + E8(2) + [4]").map_err(|e| e.to_string())?, Verdict::Covers, Some("(x)")),
        (u.direct_sum(&u), Verdict::DoesNotCover, None),
    ];
    for (l, verdict, label) in cases {
        let r = covers_enriques(&l, &opts).map_err(|e| e.to_string())?;
        ensure(r.verdict == verdict, format!("verdict {:?} for rank {}", r.verdict, l.rank()))?;
        if label.is_some() {
            ensure(r.condition == label, format!("label {:?}, expected {label:?}", r.condition))?;
        }
    }
    within(t.elapsed(), Duration::from_secs(60), "cover decisions")?;
    Ok("Λ⁻ covers (xii); U+E8(2)+[4] covers (x); U+U does not".into())
}

/// Σ_{x ∈ A} exp(πi q(x)) from Smith-form generators of L^∨/L.
fn gauss_sum(l: &IntLattice) -> (f64, f64, u128) {
    let dg = discriminant_group(l);
    let orders: Vec<i128> = dg.elementary_divisors.clone();
    let k = orders.len();
    let big_n: i128 = orders.iter().fold(1, |a, b| a.lcm(b));
    let modulus = 2 * big_n;
    // q(x_i) N and 2 b(x_i, x_j) N as integers mod 2N
    let to_int = |q: num_rational::BigRational| -> i128 {
        let v = q * num_rational::BigRational::from_integer(big_n.into());
        assert!(v.is_integer());
        v.to_integer().to_i128().unwrap().rem_euclid(modulus)
    };
    let qd: Vec<i128> = (0..k).map(|i| to_int(dg.pairing(i, i))).collect();
    let mut cross = vec![vec![0i128; k]; k];
    for i in 0..k {
        for j in 0..i {
            cross[i][j] = to_int(dg.pairing(i, j) * num_rational::BigRational::from_integer(2.into()));
        }
    }
    let mut c = vec![0i128; k];
    let (mut re, mut im) = (0.0, 0.0);
    let mut count = 0u128;
    loop {
        let mut s = 0i128;
        for i in 0..k {
            s += c[i] * c[i] % modulus * qd[i];
            for j in 0..i {
                s += c[i] * c[j] % modulus * cross[i][j];
            }
            s %= modulus;
        }
        let angle = std::f64::consts::PI * s as f64 / big_n as f64;
        re += angle.cos();
        im += angle.sin();
        count += 1;
        let mut i = 0;
        loop {
            if i == k {
                return (re, im, count);
            }
            c[i] += 1;
            if c[i] < orders[i] {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

fn milgram(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for trial in 0..300 {
        let l = common::random_even_lattice(rng, 8, 10_000);
        let (sp, sm) = l.signature();
        let sig = (sp as i64 - sm as i64).rem_euclid(8);
        let q = TorsionForm::of_even_lattice(&l);
        ensure(q.signature_mod8() as i64 == sig, format!("trial {trial}: form signature {} vs {sig}", q.signature_mod8()))?;
        let (re, im, order) = gauss_sum(&l);
        ensure(order == l.determinant().unsigned_abs(), format!("trial {trial}: |A| = {order}"))?;
        let theta = std::f64::consts::PI * sig as f64 / 4.0;
        let r = (order as f64).sqrt();
        let err = ((re - r * theta.cos()).powi(2) + (im - r * theta.sin()).powi(2)).sqrt();
        ensure(err <= 1e-6 * r.max(1.0), format!("trial {trial}: Gauss sum off by {err}"))?;
    }
    Ok(())
}

fn factors_d_e(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..200 {
        let g = common::random_genus(rng, 2..=10, 500);
        let n = g.rank() as i64;
        let f = ratio_factors(&g);
        ensure(f.d == arith::rat_int(g.det), format!("{g}: factor D² = {} ≠ det", f.d))?;
        let want_e = if g.is_even() {
            let e = (n - arith::valuation(g.det, 2) as i64).max(0);
            arith::rational_pow(&arith::rat(2, 1), e)
        } else {
            num_rational::BigRational::one()
        };
        // even genera: J_2^0 has dimension at least n - ν₂(d), so only a lower bound holds
        let ok = if g.is_even() { f.e >= want_e } else { f.e == want_e };
        ensure(ok, format!("{g}: factor E = {}, formula gives {want_e}", f.e))?;
        let ratio = mass_ratio(&g);
        let p = f.product_squared();
        ensure(p.pi_exp == 0 && p.rational == &ratio * &ratio, format!("{g}: factors do not multiply to the ratio"))?;
    }
    Ok(())
}

fn lower_bounds(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..200 {
        let g = common::random_genus(rng, 2..=10, 500);
        let n = g.rank() as u32;
        let d = g.det as u64;
        let parity = if g.is_even() { Parity::II } else { Parity::I };
        let f2 = f_squared(parity, n, d);
        let ratio = mass_ratio(&g);
        let r2 = &ratio * &ratio;
        let mut bits = 64;
        loop {
            let bound = if n >= 3 {
                c_n_squared(n, bits).scale(&f2)
            } else {
                let c = c2_prime(bits);
                let k = kappa_bound(d, bits);
                c.mul(&c).scale(&f2).div(&k.mul(&k))
            };
            match bound.le(&r2) {
                Some(true) => break,
                Some(false) => return Err(format!("{g}: ratio {ratio} below the bound")),
                None if bits >= 4096 => return Err(format!("{g}: bound comparison inconclusive")),
                None => bits *= 2,
            }
        }
    }
    Ok(())
}

fn certificates(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..50 {
        let g = common::random_genus(rng, 1..=6, 200);
        let set = representatives(&g, &RepOptions::default()).map_err(|e| e.to_string())?;
        ensure(set.is_closed(), format!("{g}: mass certificate open"))?;
        let reps = &set.representatives;
        for i in 0..reps.len() {
            ensure(genus_of(&reps[i]).key() == g.key(), format!("{g}: representative outside the genus"))?;
            for j in 0..i {
                ensure(is_isometric(&reps[i], &reps[j]).is_none(), format!("{g}: classes {i} and {j} isometric"))?;
            }
        }
    }
    Ok(())
}

fn criterion9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    milgram(&mut rng)?;
    factors_d_e(&mut rng)?;
    lower_bounds(&mut rng)?;
    certificates(&mut rng)?;
    Ok("Milgram 300, factors D/E 200, bounds 200, certificates 50".into())
}

fn criterion10() -> Outcome {
    let opts = ClassifyOptions::default();
    let (a, b) = compute_d_sets(21, &opts);
    ensure(a.is_empty() && b.is_empty(), format!("D_21 has {} + {} members", a.len(), b.len()))?;
    for n in [5u32, 9] {
        for parity in [Parity::I, Parity::II] {
            let set = compute_d_set(n, parity, &opts);
            for d in 1..=10_000u64 {
                ensure(
                    in_d_set(n, parity, d, &opts) == set.contains(&d),
                    format!("n={n} {parity:?} d={d}: membership disagrees"),
                )?;
            }
        }
    }
    Ok("D_21 empty; brute force agrees for n=5,9 up to 10^4".into())
}

fn main() {
    let only: Option<Vec<usize>> =
        std::env::var("ACCEPTANCE_ONLY").ok().map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let criteria: [fn() -> Outcome; 10] = [
        criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8, criterion9,
        criterion10,
    ];
    let mut failed = 0;
    for (i, f) in criteria.iter().enumerate() {
        let n = i + 1;
        if only.as_ref().is_some_and(|o| !o.contains(&n)) {
            continue;
        }
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("criterion {n}: PASS  {msg} [{:.1?}]", t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL  {msg} [{:.1?}]", t.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
