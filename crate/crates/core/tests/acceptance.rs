//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skewone::cayley_dickson::{cd_isomorphism, CdAlgebra, DegreeFourJordan};
use skewone::cns::{builtin, split_double, verify_autotopy_identities, CubicNormStructure, SemilinearMap};
use skewone::cubic::{CubicForm, Twist};
use skewone::error::Error;
use skewone::hcns::{from_autotopy, semilinear_extend, to_cns_with_autotopy, HermitianCns};
use skewone::scalars::{EtaleExtension, Field, PrimeField, Rationals, Ring};
use skewone::structurable::{
    division_scan, exchange_autotopy_algebra, extract_hcns, matrix_algebra, projective_zeros, verify_norm,
    verify_structurable, AutotopyAlgebra, GenericAlgebra, KjElement, SkewDimOneAlgebra, BASIS_QUADRUPLE_MAX_DIM,
};
use skewone::verify::{Mode, Report, SamplingPolicy};

type Outcome = Result<String, String>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn pol() -> SamplingPolicy {
    SamplingPolicy::default()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(rep: &Report, what: &str) -> Result<(), String> {
    ensure(rep.all_passed(), || format!("{what}:\n{}", rep.summary()))
}

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(format!("{detail}, {t:.2?}"))
}

const CORE: [&str; 3] = ["unit", "diagonal3", "matrices3"];

/// An element with invertible norm.
fn invertible<R: Ring, C: CubicForm<R = R>>(c: &C, rng: &mut ChaCha8Rng) -> Vec<R::Elem> {
    let r = c.ring();
    loop {
        let v: Vec<_> = (0..c.dim()).map(|_| r.sample(rng)).collect();
        if r.is_unit(&c.norm(&v)) {
            return v;
        }
    }
}

/// The semilinear extensions of criterion 3, with labels.
struct Instances<F: Field> {
    items: Vec<(String, HermitianCns<F>)>,
}

fn extensions<F: Field>(k: &EtaleExtension<F>, label: &str, names: &[&str]) -> Instances<F> {
    let lambda = k.trace_zero_generator();
    let items = names
        .iter()
        .map(|name| {
            let j = builtin(k.base().clone(), name).unwrap();
            (format!("{name}/{label}"), semilinear_extend(&j, k, &lambda).unwrap())
        })
        .collect();
    Instances { items }
}

fn q_i() -> EtaleExtension<Rationals> {
    EtaleExtension::field(Rationals, q(-1)).unwrap()
}

fn q_sqrt2() -> EtaleExtension<Rationals> {
    EtaleExtension::field(Rationals, q(2)).unwrap()
}

fn f25() -> EtaleExtension<PrimeField> {
    EtaleExtension::field(f5(), 2).unwrap()
}

fn split_q() -> EtaleExtension<Rationals> {
    EtaleExtension::split(Rationals)
}

/// Runs `f` on every criterion-3 instance; `names` picks the builtins.
fn each_instance(names: &[&str], mut f: impl FnMut(&str, Inst) -> Result<(), String>) -> Result<usize, String> {
    let mut count = 0;
    for (label, h) in extensions(&q_i(), "Q(i)", names).items {
        f(&label, Inst::Q(h))?;
        count += 1;
    }
    for (label, h) in extensions(&q_sqrt2(), "Q(√2)", names).items {
        f(&label, Inst::Q(h))?;
        count += 1;
    }
    for (label, h) in extensions(&f25(), "F25", names).items {
        f(&label, Inst::P(h))?;
        count += 1;
    }
    for (label, h) in extensions(&split_q(), "Q⊕Q", names).items {
        f(&label, Inst::Q(h))?;
        count += 1;
    }
    Ok(count)
}

enum Inst {
    Q(HermitianCns<Rationals>),
    P(HermitianCns<PrimeField>),
}

macro_rules! on_inst {
    ($inst:expr, |$h:ident| $body:expr) => {
        match $inst {
            Inst::Q($h) => $body,
            Inst::P($h) => $body,
        }
    };
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for name in CORE {
        passed(&builtin(Rationals, name).unwrap().verify(&pol()), &format!("{name}/Q"))?;
        passed(&builtin(f5(), name).unwrap().verify(&pol()), &format!("{name}/F5"))?;
        n += 2;
    }
    for name in ["unit", "diagonal3"] {
        passed(&split_double(&builtin(Rationals, name).unwrap()).verify(&pol()), &format!("split {name}/Q"))?;
        passed(&split_double(&builtin(f5(), name).unwrap()).verify(&pol()), &format!("split {name}/F5"))?;
        n += 2;
    }
    // Small finite instances must have been enumerated.
    let rep = builtin(f5(), "diagonal3").unwrap().verify(&pol());
    let exhaustive = rep.records.iter().filter(|r| r.mode == Mode::Exhaustive).count();
    ensure(exhaustive > 0, || "no exhaustive records over F5".into())?;
    within(start, Duration::from_secs(30), format!("{n} structures"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut n = 0;
    for name in CORE {
        let j = builtin(Rationals, name).unwrap();
        for _ in 0..5 {
            let b = invertible(&j, &mut rng);
            let rep = verify_autotopy_identities(&j, &j.u_map(&b), &pol()).map_err(|e| e.to_string())?;
            passed(&rep, &format!("U_b on {name}"))?;
            n += 1;
        }
    }
    for name in CORE {
        let s = split_double(&builtin(Rationals, name).unwrap());
        let k = s.ring().clone();
        for eta in [1, 2, -3] {
            let phi = SemilinearMap::scalar(&k, s.dim(), &k.from_i64(eta), Twist::Sigma);
            let rep = verify_autotopy_identities(&s, &phi, &pol()).map_err(|e| e.to_string())?;
            passed(&rep, &format!("exchange η={eta} on {name}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} autotopies"))
}

fn criterion_3() -> Outcome {
    let n = each_instance(&CORE, |label, inst| on_inst!(inst, |h| passed(&h.verify(&pol()), label)))?;
    Ok(format!("{n} hermitian structures"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut n = 0;
    fn round_trip<F: Field>(h: &HermitianCns<F>, rng: &mut ChaCha8Rng) -> Result<(), String> {
        for _ in 0..5 {
            let z = invertible(h, rng);
            let c = to_cns_with_autotopy(h, &z).map_err(|e| e.to_string())?;
            let back = from_autotopy(&c.cns, &c.phi, &c.gamma).map_err(|e| e.to_string())?;
            ensure(back == *h, || "round trip changed the tensors".into())?;
        }
        Ok(())
    }
    round_trip(&extensions(&q_i(), "Q(i)", &["diagonal3"]).items[0].1, &mut rng)?;
    n += 5;
    round_trip(&extensions(&f25(), "F25", &["matrices3"]).items[0].1, &mut rng)?;
    n += 5;
    round_trip(&extensions(&split_q(), "Q⊕Q", &["unit"]).items[0].1, &mut rng)?;
    n += 5;
    Ok(format!("{n} round trips"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    fn agree<F: Field>(label: &str, h: &HermitianCns<F>, rng: &mut ChaCha8Rng) -> Result<(), String> {
        let z = invertible(h, rng);
        let c = to_cns_with_autotopy(h, &z).map_err(|e| e.to_string())?;
        let t = AutotopyAlgebra::new(c.cns, c.phi, c.gamma).map_err(|e| e.to_string())?;
        let direct = SkewDimOneAlgebra::new(h.clone()).to_generic();
        ensure(t.to_generic().table() == direct.table(), || format!("{label}: products differ"))
    }
    let n = each_instance(&CORE, |label, inst| on_inst!(inst, |h| agree(label, &h, &mut rng)))?;
    Ok(format!("{n} instances, all basis pairs"))
}

fn criterion_6() -> Outcome {
    let mut n = 0;
    for name in CORE {
        let j = builtin(Rationals, name).unwrap();
        for eta in [1, 2, -3] {
            let direct = matrix_algebra(&j, &q(eta)).map_err(|e| e.to_string())?;
            let via = exchange_autotopy_algebra(&j, &q(eta)).map_err(|e| e.to_string())?.to_generic();
            ensure(direct == via, || format!("{name} η={eta}: tables differ"))?;
            n += 1;
        }
    }
    Ok(format!("{n} tables identical"))
}

fn criterion_7() -> Outcome {
    let p = SamplingPolicy { samples: 100, ..pol() };
    let n = each_instance(&["unit", "diagonal3"], |label, inst| {
        on_inst!(inst, |h| {
            let rep = verify_norm(&SkewDimOneAlgebra::new(h), &p);
            passed(&rep, label)?;
            let rec = rep.get("nu.psi-agreement").ok_or("missing psi agreement")?;
            ensure(rec.cases >= 100, || format!("{label}: only {} cases", rec.cases))
        })
    })?;
    let a = SkewDimOneAlgebra::new(extensions(&q_i(), "Q(i)", &["unit"]).items.remove(0).1);
    let k = a.extension();
    let x = KjElement::new(k.zero(), vec![k.one()]);
    let v = a.nu(&x).map_err(|e| e.to_string())?;
    ensure(v == q(-3), || format!("ν(0,1) = {v}, expected -3"))?;
    Ok(format!("{n} algebras, ν(0,1) = -3"))
}

fn structurable<F: Field>(label: &str, g: &GenericAlgebra<F>, small_exhaustive: bool) -> Result<(), String> {
    let rep = verify_structurable(g, &pol());
    passed(&rep, label)?;
    if small_exhaustive && g.dim() <= 8 {
        let mode = rep.get("struct.operator-identity").map(|r| r.mode);
        ensure(mode == Some(Mode::Exhaustive), || format!("{label}: operator identity not exhaustive"))?;
    }
    Ok(())
}

fn cd_algebras() -> Vec<(String, Result<GenericAlgebra<Rationals>, GenericAlgebra<PrimeField>>)> {
    let mut out = Vec::new();
    for name in CORE {
        for mu in [2, -1, 4] {
            let j = DegreeFourJordan::new(&builtin(Rationals, name).unwrap()).unwrap();
            out.push((format!("CD({name}, {mu})/Q"), Ok(CdAlgebra::new(j, q(mu)).unwrap().to_generic())));
        }
        for mu in [2, 4] {
            let j = DegreeFourJordan::new(&builtin(f5(), name).unwrap()).unwrap();
            out.push((format!("CD({name}, {mu})/F5"), Err(CdAlgebra::new(j, mu).unwrap().to_generic())));
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut n = each_instance(&CORE, |label, inst| {
        on_inst!(inst, |h| structurable(label, &SkewDimOneAlgebra::new(h).to_generic(), true))
    })?;
    for name in CORE {
        for eta in [1, 2, -3] {
            let g = matrix_algebra(&builtin(Rationals, name).unwrap(), &q(eta)).unwrap();
            structurable(&format!("matrix {name} η={eta}"), &g, false)?;
            n += 1;
        }
        let g = matrix_algebra(&builtin(f5(), name).unwrap(), &2).unwrap();
        structurable(&format!("matrix {name}/F5"), &g, true)?;
        n += 1;
    }
    for (label, g) in cd_algebras() {
        match g {
            Ok(g) => structurable(&label, &g, false)?,
            Err(g) => structurable(&label, &g, true)?,
        }
        n += 1;
    }
    within(
        start,
        Duration::from_secs(60),
        format!("{n} algebras, basis quadruples up to dimension {BASIS_QUADRUPLE_MAX_DIM}"),
    )
}

fn criterion_9() -> Outcome {
    let n = each_instance(&CORE, |label, inst| {
        on_inst!(inst, |h| {
            let g = SkewDimOneAlgebra::new(h.clone()).to_generic();
            let ex = extract_hcns(&g, &pol()).map_err(|e| format!("{label}: {e}"))?;
            ensure(ex.extension.is_split() == h.extension().is_split(), || format!("{label}: wrong kind"))?;
            ensure(ex.hcns == h, || format!("{label}: tensors differ"))
        })
    })?;
    // F ⊕ F with the trivial involution has no skew part.
    let f = Rationals;
    let trivial = GenericAlgebra::from_product(
        f,
        2,
        |x, y| vec![&x[0] * &y[0], &x[1] * &y[1]],
        |x| x.to_vec(),
        vec![q(1), q(1)],
    )
    .unwrap();
    match extract_hcns(&trivial, &pol()) {
        Err(Error::Precondition(m)) if m.contains("dimension 0") => {}
        other => return Err(format!("trivial involution: {other:?}")),
    }
    Ok(format!("{n} recovered, trivial involution refused"))
}

fn criterion_10() -> Outcome {
    let n = each_instance(&CORE, |label, inst| {
        on_inst!(inst, |h| {
            let a = SkewDimOneAlgebra::new(h);
            let center = a.to_generic().center();
            ensure(center.len() == 1, || format!("{label}: center has dimension {}", center.len()))?;
            ensure(a.radical().nondegenerate, || format!("{label}: reported degenerate"))
        })
    })?;
    let a = SkewDimOneAlgebra::new(extensions(&q_i(), "Q(i)", &["radical4"]).items.remove(0).1);
    let rad = a.radical();
    ensure(!rad.nondegenerate && !rad.ideal.is_empty(), || "radical4: no radical found".into())?;
    passed(&rad.report, "radical4 ideal")?;
    Ok(format!("{n} centers equal F1, radical of dimension {} verified", rad.ideal.len()))
}

fn criterion_11() -> Outcome {
    let start = Instant::now();
    for name in CORE {
        passed(&DegreeFourJordan::new(&builtin(Rationals, name).unwrap()).unwrap().verify(&pol()), name)?;
        passed(&DegreeFourJordan::new(&builtin(f5(), name).unwrap()).unwrap().verify(&pol()), name)?;
    }
    for name in ["unit", "diagonal3"] {
        let j = DegreeFourJordan::new(&builtin(Rationals, name).unwrap()).unwrap();
        ensure(j.trace_zero_cns().ok() == Some(j.core().clone()), || format!("{name}: B₀ differs from J₀"))?;
        for mu in [2, -1, 4] {
            let label = format!("CD({name}, {mu})");
            structurable(&label, &CdAlgebra::new(j.clone(), q(mu)).unwrap().to_generic(), false)?;
            let iso = cd_isomorphism(&builtin(Rationals, name).unwrap(), &q(mu)).map_err(|e| e.to_string())?;
            passed(&iso.report, &format!("isomorphism {label}"))?;
            let m = iso.hermitian.f_dim() as u64;
            let pairs = iso.report.get("cd.isomorphism.mul").map(|r| r.cases);
            ensure(pairs == Some(m * m), || format!("{label}: {pairs:?} pairs checked"))?;
        }
    }
    within(start, Duration::from_secs(30), "6 isomorphisms on all basis pairs".into())
}

fn criterion_12() -> Outcome {
    let start = Instant::now();
    let f = f5();
    let j: CubicNormStructure<PrimeField> = builtin(f, "unit").unwrap();
    let a = SkewDimOneAlgebra::new(exchange_autotopy_algebra(&j, &1).unwrap().hermitian().unwrap());
    ensure(a.f_dim() == 4, || "expected dimension 4".into())?;
    let zeros = division_scan(&a).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), || format!("scan took {t:.2?}"))?;
    // Leading coordinate 1 and pairwise distinct means one vector per line.
    for z in &zeros {
        let lead = z.iter().find(|c| !f.is_zero(c));
        ensure(lead == Some(&1), || format!("{z:?} is not normalized"))?;
    }
    let mut sorted = zeros.clone();
    sorted.sort();
    sorted.dedup();
    ensure(sorted.len() == zeros.len(), || "duplicate zeros".into())?;
    // The split-coded s = (1, 0) with b = 0 has Nr(s) = 0.
    ensure(zeros.contains(&vec![1, 0, 0, 0]), || "known zero (1,0;0) not found".into())?;
    // The matrix table shares these coordinates; the ψ-based norm agrees.
    let g = matrix_algebra(&j, &1).unwrap();
    let s0 = g.skew_basis().remove(0);
    let again = projective_zeros(&f, 4, |x| g.nu_via_psi(x, &s0)).map_err(|e| e.to_string())?;
    ensure(again == zeros, || "matrix algebra scan differs".into())?;
    Ok(format!("{} projective zeros, {t:.2?}", zeros.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("cubic norm structure suite", criterion_1),
        ("autotopy suite", criterion_2),
        ("hermitian suite", criterion_3),
        ("equivalence round trip", criterion_4),
        ("presentation agreement", criterion_5),
        ("split-case identification", criterion_6),
        ("norm oracle equivalence", criterion_7),
        ("structurable identities", criterion_8),
        ("extraction round trip", criterion_9),
        ("center and simplicity", criterion_10),
        ("Cayley–Dickson", criterion_11),
        ("finite-field scan", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
