use hypspec::flux::{char_eval, ker_q, pairing_ok, q_star, FluxIndex, FluxVector, Kernel};
use hypspec::group::{free_reduce, length_to_trace, trace_to_length, GeneratorSet, HomologyVector, Word};
use hypspec::kernels::{h_window, hhat_window, TestFunction, WindowParams};
use hypspec::Error;
use proptest::prelude::*;
use std::sync::OnceLock;

fn bolza() -> &'static GeneratorSet {
    static GENS: OnceLock<GeneratorSet> = OnceLock::new();
    GENS.get_or_init(GeneratorSet::bolza)
}

fn bump() -> &'static TestFunction {
    static TF: OnceLock<TestFunction> = OnceLock::new();
    TF.get_or_init(|| TestFunction::bump(1.0).unwrap())
}

fn letter() -> impl Strategy<Value = i16> {
    prop_oneof![1i16..=4, -4i16..=-1]
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 1..=max_len).prop_map(|ix| free_reduce(&Word::from_indices(&ix)))
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dehn_reduction_keeps_the_element(w in word(16)) {
        let reduced = bolza().dehn_reduce(&w);
        prop_assert!(reduced.len() <= w.len());
        let a = bolza().word_to_matrix(&w).to_row_major();
        let b = bolza().word_to_matrix(&reduced).to_row_major();
        let scale = a.iter().chain(&b).fold(1.0f64, |m, x| m.max(x.abs()));
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn abelianization_is_a_homomorphism(u in word(10), v in word(10)) {
        let g = 2;
        let sum = hypspec::group::abelianize(&u.concat(&v), g);
        let parts = &hypspec::group::abelianize(&u, g) + &hypspec::group::abelianize(&v, g);
        prop_assert_eq!(sum, parts);
        prop_assert_eq!(hypspec::group::abelianize(&u.inverse(), g), hypspec::group::abelianize(&u, g).negated());
    }

    #[test]
    fn normal_form_is_a_class_invariant(w in word(12), c in word(4), shift in 0usize..12) {
        let conjugate = free_reduce(&c.concat(&w).concat(&c.inverse()));
        let base = bolza().cyclic_normal_form(&w);
        match base {
            Err(Error::TrivialWord) => {
                prop_assert!(matches!(bolza().cyclic_normal_form(&conjugate), Err(Error::TrivialWord)));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
            Ok(nf) => {
                prop_assert_eq!(bolza().cyclic_normal_form(&conjugate).unwrap(), nf.clone());
                let rotated = w.rotate(shift % w.len());
                prop_assert_eq!(bolza().cyclic_normal_form(&rotated).unwrap(), nf.clone());
                let t0 = bolza().word_to_matrix(&w).trace().abs();
                let t1 = bolza().word_to_matrix(&nf).trace().abs();
                prop_assert!(relative_gap(t0, t1) < 1e-9);
                prop_assert!(nf.len() <= w.len());
            }
        }
    }

    #[test]
    fn sigma_signs_multiply(w in word(10), n in 1usize..=4) {
        let gens = bolza();
        if let Ok(s) = gens.sigma_sign(&w) {
            let power = gens.sigma_sign(&w.repeat(n)).unwrap();
            prop_assert_eq!(power, s.pow(n as u32));
            prop_assert_eq!(gens.sigma_sign(&w.inverse()).unwrap(), s);
        }
    }

    #[test]
    fn trace_length_round_trip(length in 0.01f64..40.0) {
        let back = trace_to_length(length_to_trace(length)).unwrap();
        prop_assert!((back - length).abs() < 1e-9 * length.max(1.0));
    }

    #[test]
    fn characters_are_unitary_and_multiplicative(
        q in 1u32..9,
        nums in prop::collection::vec(0u32..64, 4),
        h in prop::collection::vec(-20i64..20, 4),
        n in -6i64..6,
        m in -6i64..6,
    ) {
        let theta = FluxVector::from_fractions(q, nums.clone());
        let h = HomologyVector(h);
        let a = char_eval(&theta, &h, n);
        let b = char_eval(&theta, &h, m);
        let ab = char_eval(&theta, &h, n + m);
        prop_assert!((a.norm() - 1.0).abs() < 1e-14);
        prop_assert!((a * b - ab).norm() < 1e-12);
        let reals = FluxVector::from_reals(theta.theta().to_vec());
        prop_assert!((char_eval(&reals, &h, n) - a).norm() < 1e-9);
    }

    #[test]
    fn kernels_and_pairings(q in 1u32..13, h in prop::collection::vec(-30i64..30, 4), n in 0i64..40) {
        let h = HomologyVector(h);
        let star = q_star(&h, q);
        prop_assert_eq!(q % star, 0);
        match ker_q(&h, FluxIndex::Finite(q)) {
            Kernel::Residues(rs) => {
                prop_assert_eq!(rs.len() as u32, q / star);
                for r in rs {
                    prop_assert!(h.entries().iter().all(|&x| (r as i64 * x).rem_euclid(q as i64) == 0));
                }
            }
            Kernel::All => prop_assert!(false, "finite q never gives every integer"),
        }
        let in_kernel = h.entries().iter().all(|&x| (n * x).rem_euclid(q as i64) == 0);
        let zero = HomologyVector::zero(2);
        prop_assert_eq!(pairing_ok(n, &h, 1, &zero, FluxIndex::Finite(q)), in_kernel);
        prop_assert_eq!(
            pairing_ok(n, &h, 2, &h, FluxIndex::Finite(q)),
            pairing_ok(2, &h, n, &h, FluxIndex::Finite(q))
        );
    }

    #[test]
    fn window_support_and_evenness(l in 2.0f64..12.0, tau in 0.1f64..10.0, u in -40.0f64..40.0, r in -20.0f64..20.0) {
        let w = WindowParams::new(l, tau).unwrap();
        if u.abs() >= l {
            prop_assert_eq!(hhat_window(bump(), &w, u), 0.0);
        }
        prop_assert!((hhat_window(bump(), &w, u) - hhat_window(bump(), &w, -u)).abs() < 1e-14);
        prop_assert!((h_window(bump(), &w, r) - h_window(bump(), &w, -r)).abs() < 1e-12);
    }

    #[test]
    fn bump_transform_is_even(u in -3.0f64..3.0) {
        prop_assert!((bump().fhat(u) - bump().fhat(-u)).abs() <= 1e-14);
        if u.abs() >= 1.0 {
            prop_assert_eq!(bump().fhat(u), 0.0);
        }
    }
}
