//! Algebraic invariants on random inputs.

use num_rational::BigRational;
use proptest::prelude::*;

use skewone::cayley_dickson::{CdAlgebra, DegreeFourJordan};
use skewone::cns::builtin;
use skewone::cubic::CubicForm;
use skewone::hcns::semilinear_extend;
use skewone::scalars::{EtaleExtension, KElement, PrimeField, Rationals, Ring};
use skewone::structurable::{KjElement, SkewDimOneAlgebra};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn qs(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&n| q(n)).collect()
}

fn small() -> impl Strategy<Value = i64> {
    -6i64..=6
}

fn unit_extension_algebra() -> SkewDimOneAlgebra<Rationals> {
    let k = EtaleExtension::field(Rationals, q(-1)).unwrap();
    let j = builtin(Rationals, "diagonal3").unwrap();
    let lambda = k.trace_zero_generator();
    SkewDimOneAlgebra::new(semilinear_extend(&j, &k, &lambda).unwrap())
}

fn cd() -> CdAlgebra<Rationals> {
    let core = builtin(Rationals, "diagonal3").unwrap();
    CdAlgebra::new(DegreeFourJordan::new(&core).unwrap(), q(-3)).unwrap()
}

proptest! {
    #[test]
    fn prime_field_inverse_and_distributivity(a in 0u64..2_147_483_647, b in 0u64..2_147_483_647, c in 0u64..2_147_483_647) {
        let f = PrimeField::new(2_147_483_647).unwrap();
        if !f.is_zero(&a) {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
        prop_assert_eq!(f.mul(&f.add(&a, &b), &c), f.add(&f.mul(&a, &c), &f.mul(&b, &c)));
        prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
    }

    #[test]
    fn extension_norm_is_multiplicative(a in prop::array::uniform4(small())) {
        for k in [EtaleExtension::field(Rationals, q(2)).unwrap(), EtaleExtension::split(Rationals)] {
            let x = KElement::new(q(a[0]), q(a[1]));
            let y = KElement::new(q(a[2]), q(a[3]));
            prop_assert_eq!(k.norm(&k.mul(&x, &y)), Rationals.mul(&k.norm(&x), &k.norm(&y)));
            prop_assert_eq!(k.conj(&k.conj(&x)), x);
        }
    }

    #[test]
    fn rational_emit_parse_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..10_000) {
        let x = BigRational::new(n.into(), d.into());
        prop_assert_eq!(Rationals.parse(&Rationals.emit(&x)).unwrap(), x);
    }

    #[test]
    fn sharp_of_sharp_is_norm_multiple(a in prop::array::uniform3(small())) {
        let j = builtin(Rationals, "diagonal3").unwrap();
        let a = qs(&a);
        let lhs = j.sharp(&j.sharp(&a));
        let n = j.norm(&a);
        let rhs: Vec<_> = a.iter().map(|x| Rationals.mul(&n, x)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nu_is_quartic(s in prop::array::uniform2(small()), b in prop::array::uniform6(small()), t in small()) {
        let a = unit_extension_algebra();
        let k = a.extension();
        let x = KjElement::new(
            KElement::new(q(s[0]), q(s[1])),
            b.chunks(2).map(|c| KElement::new(q(c[0]), q(c[1]))).collect(),
        );
        let te = k.embed(&q(t));
        let tx = KjElement::new(k.mul(&te, &x.s), x.b.iter().map(|c| k.mul(&te, c)).collect());
        prop_assert_eq!(a.nu(&tx).unwrap(), Rationals.mul(&Rationals.pow(&q(t), 4), &a.nu(&x).unwrap()));
    }

    #[test]
    fn jordan_theta_is_involutive(x in prop::array::uniform4(small())) {
        let j = DegreeFourJordan::new(&builtin(Rationals, "diagonal3").unwrap()).unwrap();
        let x = qs(&x);
        prop_assert_eq!(j.theta(&j.theta(&x)), x);
    }

    #[test]
    fn cayley_dickson_involution(x in prop::array::uniform8(small()), y in prop::array::uniform8(small())) {
        let a = cd();
        let (x, y) = (qs(&x), qs(&y));
        prop_assert_eq!(a.conj(&a.conj(&x)), x.clone());
        prop_assert_eq!(a.conj(&a.mul(&x, &y)), a.mul(&a.conj(&y), &a.conj(&x)));
    }
}
