use baer_core::magnus::{expand_expr, lcs_class, magnus_expand};
use baer_core::{CommutatorExpr, Generator, Int, LcsClass, Letter, TruncatedSeries, Word};
use proptest::prelude::*;

const LETTERS: [Letter; 4] = [Letter::X, Letter::Y, Letter::X_INV, Letter::Y_INV];

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..4usize, 0..=max_len).prop_map(|v| Word::from_letters(v.into_iter().map(|i| LETTERS[i])))
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![Just(Generator::X), Just(Generator::Y)]
}

// Left-normed commutator of `len` letters; lies in γ_len(F).
fn simple_commutator(len: usize) -> impl Strategy<Value = CommutatorExpr> {
    prop::collection::vec(generator(), len).prop_map(|gs| CommutatorExpr::left_normed(gs.into_iter().map(CommutatorExpr::generator)))
}

fn is_reduced(w: &Word) -> bool {
    w.letters().windows(2).all(|p| p[0] != p[1].inv())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_associative(a in word(10), b in word(10), c in word(10)) {
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn products_are_freely_reduced(a in word(12), b in word(12)) {
        let ab = a.multiply(&b);
        prop_assert!(is_reduced(&ab));
        // Reduction is confluent: letter-by-letter pushing gives the same word.
        let mut pushed = a.clone();
        for &l in b.letters() {
            pushed.push(l);
        }
        prop_assert_eq!(pushed, ab);
    }

    #[test]
    fn inverses(a in word(12), b in word(12)) {
        prop_assert!(a.multiply(&a.inverse()).is_empty());
        prop_assert_eq!(a.multiply(&b).inverse(), b.inverse().multiply(&a.inverse()));
        prop_assert_eq!(a.pow(-3), a.inverse().pow(3));
    }

    #[test]
    fn text_round_trip(a in word(16)) {
        prop_assert_eq!(a.to_string().parse::<Word>().unwrap(), a);
    }

    #[test]
    fn commutator_identities(a in word(6), b in word(6), c in word(6)) {
        // [a, b]⁻¹ = [b, a] and [ab, c] = [a, c]^b [b, c].
        prop_assert_eq!(a.commutator(&b).inverse(), b.commutator(&a));
        let lhs = a.multiply(&b).commutator(&c);
        let rhs = a.commutator(&c).conjugate(&b).multiply(&b.commutator(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn magnus_is_a_homomorphism(a in word(10), b in word(10), cap in 1usize..=7) {
        let ma = magnus_expand(&a, cap).unwrap();
        let mb = magnus_expand(&b, cap).unwrap();
        prop_assert_eq!(magnus_expand(&a.multiply(&b), cap).unwrap(), ma.multiply(&mb));
        prop_assert_eq!(magnus_expand(&a.inverse(), cap).unwrap(), ma.inverse().unwrap());
        prop_assert!(ma.multiply(&ma.inverse().unwrap()).is_one());
    }

    #[test]
    fn magnus_powers(a in word(6), k in -5i64..=5) {
        let ma = magnus_expand(&a, 6).unwrap();
        prop_assert_eq!(magnus_expand(&a.pow(k), 6).unwrap(), ma.pow(&Int::from(k)).unwrap());
    }

    #[test]
    fn series_commutator_matches_words(a in word(6), b in word(6)) {
        let ma = magnus_expand(&a, 6).unwrap();
        let mb = magnus_expand(&b, 6).unwrap();
        prop_assert_eq!(magnus_expand(&a.commutator(&b), 6).unwrap(), ma.commutator(&mb).unwrap());
    }

    #[test]
    fn expressions_expand_like_their_words(e in simple_commutator(4), k in -3i64..=3, w in word(4)) {
        let e = CommutatorExpr::Product(vec![e.pow(k), CommutatorExpr::word(w)]);
        prop_assert_eq!(expand_expr(&e, 6).unwrap(), magnus_expand(&e.eval(), 6).unwrap());
    }

    #[test]
    fn commutators_respect_the_filtration(i in 1usize..=3, j in 1usize..=3, seed in any::<u64>()) {
        let pick = |k: usize, shift: u32| {
            CommutatorExpr::left_normed((0..k).map(|t| {
                let bit = (seed >> ((t as u32 + shift) % 64)) & 1;
                CommutatorExpr::generator(Generator::from_index(bit as usize).unwrap())
            }))
        };
        let (u, v) = (pick(i, 0), pick(j, 17));
        let cap = 7;
        prop_assert!(lcs_class(&u.eval(), cap).unwrap().at_least(i));
        prop_assert!(lcs_class(&v.eval(), cap).unwrap().at_least(j));
        let uv = u.eval().commutator(&v.eval());
        prop_assert!(lcs_class(&uv, cap).unwrap().at_least(i + j));
    }

    #[test]
    fn power_congruence_one_weight_up(c in 1usize..=4, r in 1i64..=9, tail in prop::collection::vec(generator(), 4)) {
        // [x^r, a₁, …, a_c] and [x, a₁, …, a_c]^r agree modulo γ_{c+2}.
        let items = |head: CommutatorExpr| {
            let mut v = vec![head];
            v.extend(tail[..c].iter().map(|&g| CommutatorExpr::generator(g)));
            CommutatorExpr::left_normed(v)
        };
        let lhs = items(CommutatorExpr::generator_power(Generator::X, r)).eval();
        let rhs = items(CommutatorExpr::generator(Generator::X)).eval().pow(r);
        prop_assert!(lcs_class(&lhs.multiply(&rhs.inverse()), c + 1).unwrap().at_least(c + 2));
    }
}

#[test]
fn magnus_examples() {
    let xy: Word = "XYxy".parse().unwrap();
    assert_eq!(magnus_expand(&xy, 2).unwrap().to_string(), "1 + XY - YX");
    assert_eq!(lcs_class(&xy, 4).unwrap(), LcsClass::Exact(2));
    assert_eq!(lcs_class(&Word::empty(), 4).unwrap(), LcsClass::BeyondCap);
    let x2 = magnus_expand(&"xx".parse().unwrap(), 3).unwrap();
    assert_eq!(x2.to_string(), "1 + 2*X + XX");
    let x_inv = TruncatedSeries::generator(Generator::X, 3).inverse().unwrap();
    assert_eq!(x_inv.to_string(), "1 - X + XX - XXX");
}
