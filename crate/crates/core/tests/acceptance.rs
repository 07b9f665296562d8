use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use stringbv::algebra::{Element, Window};
use stringbv::bv::{apply_b, compare_operators, BvModel, Sweep};
use stringbv::catalog;
use stringbv::expr::parse_element;
use stringbv::linear::rat;
use stringbv::model_file::load_model;
use stringbv::models::cap;
use stringbv::models::*;
use stringbv::semidirect::{check_group_like_bracket, check_morphism_into_model};

type Outcome = Result<String, String>;

fn group(name: &str) -> LieGroupData {
    catalog::lookup(name).unwrap().lie_group().unwrap().clone()
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let t = start.elapsed();
    if t < limit {
        Ok(format!("{detail} in {t:.2?}"))
    } else {
        Err(format!("{detail} but took {t:.2?} (limit {limit:?})"))
    }
}

fn b_of(m: &BvModel, text: &str) -> Element {
    apply_b(m, &parse_element(m.signature(), text).unwrap()).unwrap()
}

fn expect(m: &BvModel, input: &str, want: Element) -> Result<(), String> {
    let got = b_of(m, input);
    if got == want {
        Ok(())
    } else {
        let sig = m.signature();
        Err(format!(
            "B({input}) = {}, expected {}",
            sig.format(&got),
            sig.format(&want)
        ))
    }
}

fn circle_table() -> Outcome {
    let start = Instant::now();
    let m = build_lie_group_model(&group("S1")).map_err(|e| e.to_string())?;
    let sig = m.signature();
    for n in -5i64..=5 {
        let xn = parse_element(sig, &format!("x1^{n}")).unwrap();
        expect(&m, &format!("x1^{n}*d1"), xn.scaled(&rat(n)))?;
        expect(&m, &format!("x1^{n}"), Element::zero())?;
    }
    within(
        Duration::from_secs(1),
        start,
        "22 values for n in [-5,5]".into(),
    )
}

fn three_sphere_table() -> Outcome {
    let start = Instant::now();
    let m = build_lie_group_model(&group("SU(2)")).map_err(|e| e.to_string())?;
    let sig = m.signature();
    for n in 0i64..=8 {
        let lower = if n == 0 {
            Element::zero()
        } else {
            parse_element(sig, &format!("sx1^{}", n - 1))
                .unwrap()
                .scaled(&rat(n))
        };
        expect(&m, &format!("sx1^{n}*d1"), lower)?;
        expect(&m, &format!("sx1^{n}"), Element::zero())?;
    }
    within(
        Duration::from_secs(1),
        start,
        "18 values for n in [0,8]".into(),
    )
}

fn axiom_sweep() -> Outcome {
    let start = Instant::now();
    let window = Window::new(8);
    let mut summary = Vec::new();
    for name in ["S1", "SU(2)", "SO(3)", "U(2)", "SU(3)", "T2"] {
        let m = build_lie_group_model(&group(name)).map_err(|e| e.to_string())?;
        let r = Sweep::exhaustive(&m, window)
            .run()
            .map_err(|e| e.to_string())?;
        if !r.passed() {
            let bad = r.identities.iter().find(|i| !i.passed()).unwrap();
            return Err(format!("{name}: {} failed {} times", bad.name, bad.failed));
        }
        let checks: u64 = r.identities.iter().map(|i| i.checked).sum();
        summary.push(format!("{name} {checks}"));
    }
    within(
        Duration::from_secs(60),
        start,
        format!("all identities at D=8 ({})", summary.join(", ")),
    )
}

fn hepworth_cross_check() -> Outcome {
    let window = Window::new(10);
    let mut summary = Vec::new();
    for name in ["SU(3)", "U(2)"] {
        let data = group(name);
        let lie = build_lie_group_model(&data).map_err(|e| e.to_string())?;
        let hep = build_lie_group_hepworth_model(&data, &window).map_err(|e| e.to_string())?;
        let c = compare_operators(&hep, &lie, &window).map_err(|e| e.to_string())?;
        if let Some(cx) = &c.mismatch {
            return Err(format!("{name}: {cx:?}"));
        }
        summary.push(format!("{name} {} monomials", c.checked));
    }
    Ok(format!("identical at D=10 ({})", summary.join(", ")))
}

fn decomposition() -> Outcome {
    let window = Window::new(10);
    let mut summary = Vec::new();
    for name in ["SU(2)", "SO(3)", "U(2)", "SU(3)", "T2"] {
        let r = decomposition_check(&group(name), &window).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!(
                "{name}: bijective {}, mismatch {:?}",
                r.theta_bijective, r.mismatch
            ));
        }
        summary.push(format!("{name} {}", r.checked));
    }
    Ok(format!(
        "Θ conjugation matches at D=10 ({})",
        summary.join(", ")
    ))
}

/// Contract `x_{j_p}^∨` first, then inward: move `x_j` to the front of the word by a
/// permutation and take its sign from the inversion count.
fn koszul_oracle(subset: &[usize], r: usize) -> i64 {
    let mut word: Vec<usize> = (1..=r).collect();
    let mut sign = 1;
    for &j in subset.iter().rev() {
        let k = word.iter().position(|&g| g == j).unwrap();
        let mut perm = vec![word[k]];
        perm.extend(word.iter().copied().filter(|&g| g != j));
        let sorted_pos: Vec<usize> = perm
            .iter()
            .map(|g| word.iter().position(|w| w == g).unwrap())
            .collect();
        let inversions = (0..perm.len())
            .flat_map(|a| (a + 1..perm.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| sorted_pos[a] > sorted_pos[b])
            .count();
        if inversions % 2 == 1 {
            sign = -sign;
        }
        word.remove(k);
    }
    sign
}

fn cap_signs() -> Outcome {
    let start = Instant::now();
    let all: Vec<Vec<usize>> = (0u32..1 << 6)
        .map(|mask| (1..=6).filter(|&i| mask >> (i - 1) & 1 == 1).collect())
        .collect();
    for s in &all {
        let (closed, oracle) = (cap::cap_sign_closed_form(s), koszul_oracle(s, 6));
        if closed != oracle {
            return Err(format!(
                "subset {s:?}: closed form {closed}, oracle {oracle}"
            ));
        }
    }
    within(
        Duration::from_secs(1),
        start,
        format!("{} subsets of {{1..6}}", all.len()),
    )
}

fn example_models() -> Vec<(String, BvModel)> {
    let window = Window::new(10);
    let mut out = Vec::new();
    for name in catalog::names() {
        out.push((
            name.to_string(),
            catalog::lookup(name).unwrap().build(&window).unwrap(),
        ));
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .collect();
    files.sort();
    for f in files {
        let spec = load_model(&f).unwrap();
        out.push((spec.name.clone(), spec.build(&window).unwrap()));
    }
    let s1s3 = tensor_model(
        &circle_factor(1).unwrap(),
        &odd_sphere_factor(2, 3).unwrap(),
    )
    .unwrap();
    out.push(("S1 x S3".into(), s1s3));
    out
}

fn embeddings() -> Outcome {
    let window = Window::new(10);
    let models = example_models();
    for (name, m) in &models {
        let r = check_sub_bv(m, &window).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{name}: {:?}", r.failure));
        }
    }
    Ok(format!("{} models at D=10", models.len()))
}

fn semidirect() -> Outcome {
    let window = Window::new(10);
    let mut morphisms = 0;
    for name in catalog::names() {
        let spec = catalog::lookup(name).unwrap();
        let model = spec.build(&window).map_err(|e| e.to_string())?;
        let s = spec.semidirect().map_err(|e| e.to_string())?;
        let r = check_morphism_into_model(&model, &s, &window).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{name} morphism: {:?}", r.failure));
        }
        morphisms += r.checked;
    }
    let mut group_like = 0;
    for name in ["U(2)", "T2", "SO(3)"] {
        let spec = catalog::lookup(name).unwrap();
        let model = spec.build(&window).map_err(|e| e.to_string())?;
        let s = spec.semidirect().map_err(|e| e.to_string())?;
        let r = check_group_like_bracket(&model, &s).map_err(|e| e.to_string())?;
        if !r.passed() || r.checked == 0 {
            return Err(format!("{name} group-like: {:?}", r.failure));
        }
        group_like += r.checked;
    }
    Ok(format!(
        "{} groups, {morphisms} bracket pairs; group-like identity on {group_like} pairs",
        catalog::names().len()
    ))
}

fn mutation_sensitivity() -> Outcome {
    let data = group("U(2)");
    let mut caught = Vec::new();
    for position in 1..=data.rank() {
        let mutation = SignMutation {
            position,
            scope: MutationScope::Both,
        };
        let m = build_lie_group_model_mutated(&data, Some(mutation)).map_err(|e| e.to_string())?;
        let r = Sweep::exhaustive(&m, Window::new(8))
            .stop_at_first(true)
            .run()
            .map_err(|e| e.to_string())?;
        match r.identities.iter().find(|i| !i.passed()) {
            Some(i) => caught.push(format!("position {position} by {}", i.name)),
            None => return Err(format!("flip at position {position} passes every axiom")),
        }
    }
    Ok(format!("every flip caught ({})", caught.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, circle_table),
        (2, three_sphere_table),
        (3, axiom_sweep),
        (4, hepworth_cross_check),
        (5, decomposition),
        (6, cap_signs),
        (7, embeddings),
        (8, semidirect),
        (9, mutation_sensitivity),
    ];
    let mut failed = 0;
    for (n, check) in criteria {
        match check() {
            Ok(detail) => println!("criterion {n}: PASS - {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL - {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
