use super::*;
use crate::cns::builtin;
use crate::hcns::semilinear_extend;
use crate::scalars::{PrimeField, Rationals};
use num_rational::BigRational;
use rand::SeedableRng;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn kq(u: i64, v: i64) -> KElement<BigRational> {
    KElement::new(q(u), q(v))
}

fn extended(name: &str, mu: i64) -> SkewDimOneAlgebra<Rationals> {
    let k = EtaleExtension::field(Rationals, q(mu)).unwrap();
    SkewDimOneAlgebra::new(semilinear_extend(&builtin(Rationals, name).unwrap(), &k, &kq(0, 1)).unwrap())
}

fn rng() -> rand_chacha::ChaCha8Rng {
    rand_chacha::ChaCha8Rng::seed_from_u64(11)
}

#[test]
fn unit_extension_products_and_norm() {
    let a = extended("unit", -1);
    let x = KjElement::new(kq(0, 0), vec![kq(1, 0)]);
    assert_eq!(a.mul(&x, &x), KjElement::new(kq(3, 0), vec![kq(2, 0)]));
    assert_eq!(a.nu(&x).unwrap(), q(-3));
    assert_eq!(a.nu(&a.one()).unwrap(), q(1));
    let g = a.to_generic();
    let s0 = a.to_coords(&a.skew_element());
    assert_eq!(g.nu_via_psi(&a.to_coords(&x), &s0).unwrap(), q(-3));
    let y = KjElement::new(kq(2, -1), vec![kq(0, 5)]);
    assert_eq!(a.mul(&a.one(), &y), y);
    assert_eq!(a.mul(&y, &a.one()), y);
}

#[test]
fn involution_reverses_products() {
    let a = extended("diagonal3", 2);
    let mut r = rng();
    let mut sample = || {
        let k = a.extension();
        KjElement::new(k.sample(&mut r), (0..3).map(|_| k.sample(&mut r)).collect())
    };
    let x = KjElement::new(kq(0, 1), vec![kq(1, 0); 3]);
    assert_eq!(a.conj(&x).s, kq(0, -1));
    for _ in 0..20 {
        let (x, y) = (sample(), sample());
        assert_eq!(a.conj(&a.conj(&x)), x);
        assert_eq!(a.conj(&a.mul(&x, &y)), a.mul(&a.conj(&y), &a.conj(&x)));
        assert_eq!(
            a.to_coords(&a.commutator_closed(&x, &y)),
            a.to_generic().commutator(&a.to_coords(&x), &a.to_coords(&y))
        );
    }
}

#[test]
fn operators_on_small_cases() {
    let a = extended("diagonal3", 2);
    let g = a.to_generic();
    let f = Rationals;
    let one = g.unit().to_vec();
    let mut r = rng();
    let (x, y, z) = (g.sample(&mut r), g.sample(&mut r), g.sample(&mut r));
    assert_eq!(g.v_op(&one, &one, &z), z);
    assert_eq!(g.v_op(&x, &y, &x), g.u_op(&x, &y));
    // U_1(y) = 2ȳ − y: the identity on hermitian y, −3 on the skew line.
    let hy = g.sample_hermitian(&mut r);
    assert_eq!(g.u_op(&one, &hy), hy);
    let s0 = a.to_coords(&a.skew_element());
    assert_eq!(g.u_op(&one, &s0), linalg::scale(&f, &q(-3), &s0));
    assert!(linalg::is_zero(&f, &g.psi(&x, &x)));
    assert!(linalg::is_zero(&f, &g.d_op(&one, &one, &z)));
    let s = KjElement::new(kq(3, 4), vec![kq(0, 0); 3]);
    let psi = g.psi(&one, &a.to_coords(&s));
    assert_eq!(a.from_coords(&psi), KjElement::new(kq(0, -8), vec![kq(0, 0); 3]));
    // D_{z²,z} = D_{x²,x} for z = x + r·1 and hermitian x.
    let h = g.sample_hermitian(&mut r);
    let shifted = linalg::add(&f, &h, &linalg::scale(&f, &q(5), &one));
    assert_eq!(g.d_op(&g.mul(&h, &h), &h, &y), g.d_op(&g.mul(&shifted, &shifted), &shifted, &y));
    assert!(linalg::is_zero(&f, &g.d_op(&g.mul(&h, &h), &h, &y)));
    assert!(linalg::is_zero(&f, &g.commutator(&one, &y)));
}

#[test]
fn structurable_identities_hold_and_detect_mutation() {
    let pol = SamplingPolicy { samples: 20, quadruple_samples: 10, ..Default::default() };
    let g = extended("diagonal3", 2).to_generic();
    let rep = verify_structurable(&g, &pol);
    assert!(rep.all_passed(), "{}", rep.summary());
    assert_eq!(rep.get("struct.operator-identity").unwrap().mode, Mode::Exhaustive);
    let bad = g.with_entry(2, 4, 6, g.table().get(2, 4, 6) + q(1));
    let rep = verify_structurable(&bad, &pol);
    let rec = rep.get("struct.operator-identity").unwrap();
    assert!(!rec.passed() && rec.witness.is_some());
}

#[test]
fn norm_suite_over_fields_and_finite_fields() {
    let pol = SamplingPolicy { samples: 30, ..Default::default() };
    let rep = verify_norm(&extended("diagonal3", -1), &pol);
    assert!(rep.all_passed(), "{}", rep.summary());
    let f5 = PrimeField::new(5).unwrap();
    let k = EtaleExtension::field(f5, 2).unwrap();
    let a = SkewDimOneAlgebra::new(semilinear_extend(&builtin(f5, "unit").unwrap(), &k, &KElement::new(0, 1)).unwrap());
    let rep = verify_norm(&a, &pol);
    assert!(rep.all_passed(), "{}", rep.summary());
    assert_eq!(rep.get("nu.quartic").unwrap().mode, Mode::Exhaustive);
}

#[test]
fn center_of_nondegenerate_algebra_is_the_base_field() {
    let a = extended("diagonal3", 2);
    let g = a.to_generic();
    let z = g.center();
    assert_eq!(z.len(), 1);
    assert!(g.scalar_part(&z[0]).is_some());
    assert!(a.radical().nondegenerate);
    assert!(a.radical().ideal.is_empty());
}

/// `K′ ⊗ K` with `K′ = Q(i)` carrying the trivial involution and `K = Q ⊕ Q`
/// the exchange: commutative and associative, with hermitian part `K′ ⊗ 1`,
/// so the center is two-dimensional.
#[test]
fn center_detects_larger_center() {
    let f = Rationals;
    // Basis: 1⊗ε₁, 1⊗ε₂, i⊗ε₁, i⊗ε₂ with ε the idempotents of K.
    let mul = |x: &[BigRational], y: &[BigRational]| {
        let comp = |a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational| (a * c - b * d, a * d + b * c);
        let (r1, i1) = comp(&x[0], &x[2], &y[0], &y[2]);
        let (r2, i2) = comp(&x[1], &x[3], &y[1], &y[3]);
        vec![r1, r2, i1, i2]
    };
    let conj = |x: &[BigRational]| vec![x[1].clone(), x[0].clone(), x[3].clone(), x[2].clone()];
    let g = GenericAlgebra::from_product(f, 4, mul, conj, vec![q(1), q(1), q(0), q(0)]).unwrap();
    assert_eq!(g.center().len(), 2);
}

#[test]
fn degenerate_trace_gives_proper_ideal() {
    let a = extended("radical4", -1);
    let rad = a.radical();
    assert!(!rad.nondegenerate);
    assert_eq!(rad.ideal.len(), 2);
    assert!(rad.report.all_passed(), "{}", rad.report.summary());
}

#[test]
fn matrix_algebra_matches_split_autotopy_construction() {
    for eta in [1, 2, -3] {
        for name in ["unit", "diagonal3"] {
            let j = builtin(Rationals, name).unwrap();
            let direct = matrix_algebra(&j, &q(eta)).unwrap();
            let via = exchange_autotopy_algebra(&j, &q(eta)).unwrap();
            assert_eq!(direct, via.to_generic(), "{name} η={eta}");
            assert!(compare_presentations(&via).unwrap().passed());
        }
    }
    let g = matrix_algebra(&builtin(Rationals, "diagonal3").unwrap(), &q(1)).unwrap();
    let skew = g.skew_basis();
    assert_eq!(skew.len(), 1);
    assert_eq!(skew[0][..2], [q(-1), q(1)]);
    let pol = SamplingPolicy { samples: 10, ..Default::default() };
    assert!(verify_structurable(&g, &pol).all_passed());
    assert!(matches!(matrix_algebra(&builtin(Rationals, "unit").unwrap(), &q(0)), Err(Error::Precondition(_))));
}

#[test]
fn autotopy_presentation_rejects_bad_gamma_and_agrees_on_norm() {
    let j = builtin(Rationals, "diagonal3").unwrap();
    let t = exchange_autotopy_algebra(&j, &q(2)).unwrap();
    let s = crate::cns::split_double(&j);
    let k = s.ring().clone();
    let phi = SemilinearMap::scalar(&k, 3, &k.from_i64(2), Twist::Sigma);
    assert!(matches!(AutotopyAlgebra::new(s, phi, k.one()), Err(Error::Precondition(_))));
    let a = SkewDimOneAlgebra::new(t.hermitian().unwrap());
    let mut r = rng();
    for _ in 0..10 {
        let x = KjElement::new(k.sample(&mut r), (0..3).map(|_| k.sample(&mut r)).collect());
        assert_eq!(t.nu(&x).unwrap(), a.nu(&x).unwrap());
    }
}

#[test]
fn extraction_round_trips() {
    let pol = SamplingPolicy { samples: 10, ..Default::default() };
    for mu in [-1, 2] {
        let a = extended("diagonal3", mu);
        let ex = extract_hcns(&a.to_generic(), &pol).unwrap();
        assert!(!ex.is_split());
        assert_eq!(&ex.hcns, a.hcns());
    }
    let t = exchange_autotopy_algebra(&builtin(Rationals, "diagonal3").unwrap(), &q(2)).unwrap();
    let h = t.hermitian().unwrap();
    let ex = extract_hcns(&SkewDimOneAlgebra::new(h.clone()).to_generic(), &pol).unwrap();
    assert!(ex.is_split());
    assert_eq!(ex.hcns, h);
    let m = matrix_algebra(&builtin(Rationals, "diagonal3").unwrap(), &q(2)).unwrap();
    assert!(extract_hcns(&m, &pol).unwrap().is_split());
}

#[test]
fn extraction_rejects_trivial_involution() {
    let f = Rationals;
    // Q(i) as an algebra with trivial involution: no skew elements.
    let mul = |x: &[BigRational], y: &[BigRational]| vec![&x[0] * &y[0] - &x[1] * &y[1], &x[0] * &y[1] + &x[1] * &y[0]];
    let g = GenericAlgebra::from_product(f, 2, mul, |x| x.to_vec(), vec![q(1), q(0)]).unwrap();
    let err = extract_hcns(&g, &SamplingPolicy::default()).unwrap_err();
    assert!(matches!(err, Error::Precondition(ref m) if m.contains("dimension 0")));
}

#[test]
fn scan_finds_split_zero_and_deduplicates() {
    let f5 = PrimeField::new(5).unwrap();
    let t = exchange_autotopy_algebra(&builtin(f5, "unit").unwrap(), &1).unwrap();
    let a = SkewDimOneAlgebra::new(t.hermitian().unwrap());
    let zeros = division_scan(&a).unwrap();
    assert!(zeros.contains(&vec![1, 0, 0, 0]));
    for z in &zeros {
        let lead = z.iter().position(|c| *c != 0).unwrap();
        assert_eq!(z[lead], 1);
        assert_eq!(a.nu(&a.from_coords(z)).unwrap(), 0);
    }
    let mut sorted = zeros.clone();
    sorted.dedup();
    assert_eq!(sorted.len(), zeros.len());
}

#[test]
fn psi_formula_is_invariant_under_rescaling_s0() {
    let a = extended("unit", 2);
    let g = a.to_generic();
    let s0 = a.to_coords(&a.skew_element());
    let mut r = rng();
    for _ in 0..10 {
        let x = g.sample(&mut r);
        let base = g.nu_via_psi(&x, &s0).unwrap();
        assert_eq!(g.nu_via_psi(&x, &linalg::scale(&Rationals, &q(-7), &s0)).unwrap(), base);
        assert_eq!(base, a.nu(&a.from_coords(&x)).unwrap());
    }
    assert!(g.nu_via_psi(g.unit(), &linalg::zeros(&Rationals, 4)).is_err());
}
