//! Corrupted tables against a numeric Jacobi oracle.

use dualsym::liealg::tables;
use dualsym::{Error, LieTable, Params, ScalarPoly, Symbol};
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Structure constants `c[a][b][h]` at numeric parameters; the last index is
/// the central element.
fn numeric_constants(t: &LieTable, p: &Params) -> Vec<Vec<Vec<Complex64>>> {
    let n = t.dim();
    let mut names: Vec<String> = t.basis().to_vec();
    names.push(t.central().to_string());
    let mut c = vec![vec![vec![Complex64::new(0.0, 0.0); n + 1]; n + 1]; n + 1];
    for a in 0..n {
        for b in 0..n {
            for (h, v) in t.bracket(&names[a], &names[b]).unwrap() {
                let idx = names.iter().position(|x| *x == h).unwrap();
                c[a][b][idx] = v.eval(p).unwrap();
            }
        }
    }
    c
}

fn numeric_violations(t: &LieTable, p: &Params) -> usize {
    let c = numeric_constants(t, p);
    let n = t.dim();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut worst: f64 = 0.0;
                for h in 0..=n {
                    let mut s = Complex64::new(0.0, 0.0);
                    for (a, b, d) in [(i, j, k), (j, k, i), (k, i, j)] {
                        // [a, [b, d]] = sum_e c[b][d][e] c[a][e][h]
                        for e in 0..=n {
                            s += c[b][d][e] * c[a][e][h];
                        }
                    }
                    worst = worst.max(s.norm());
                }
                if worst > 1e-9 {
                    count += 1;
                }
            }
        }
    }
    count
}

fn generic_params() -> Params {
    Params::new()
        .with(Symbol::M, 1.37)
        .with(Symbol::Hbar, 0.83)
        .with(Symbol::Gamma, 0.41)
        .with(Symbol::Omega, 1.19)
        .with(Symbol::K, -1.0)
}

fn add_term(t: &mut LieTable, a: &str, b: &str, h: &str, c: ScalarPoly) {
    let mut terms = t.bracket(a, b).unwrap();
    terms.push((h.to_string(), c));
    let refs: Vec<(&str, ScalarPoly)> = terms.iter().map(|(n, c)| (n.as_str(), c.clone())).collect();
    t.set_bracket(a, b, &refs).unwrap();
}

#[test]
fn oracle_agrees_on_the_clean_table() {
    let t = tables::a_minus_one();
    assert_eq!(numeric_violations(&t, &generic_params()), 0);
    assert!(t.jacobi_check().is_empty());
}

#[test]
fn random_corruptions_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let base = tables::a_minus_one();
    let basis: Vec<String> = base.basis().to_vec();
    let mut detected = 0;
    for _ in 0..40 {
        let mut t = base.clone();
        let i = rng.gen_range(0..basis.len());
        let mut j = rng.gen_range(0..basis.len());
        while j == i {
            j = rng.gen_range(0..basis.len());
        }
        let h = &basis[rng.gen_range(0..basis.len())];
        let c = ScalarPoly::int(rng.gen_range(1..4)) * ScalarPoly::i_hbar();
        add_term(&mut t, &basis[i], &basis[j], h, c);
        let exact = t.jacobi_check().len();
        assert_eq!(exact, numeric_violations(&t, &generic_params()), "[{}, {}] += {h}", basis[i], basis[j]);
        if exact > 0 {
            detected += 1;
        }
    }
    assert!(detected > 20, "only {detected} corruptions broke Jacobi");
}

#[test]
fn gauge_reduction_rejects_corrupted_gauge_brackets() {
    let mut t = tables::a_minus_one();
    add_term(&mut t, "X", "G1", "P", ScalarPoly::one());
    assert!(matches!(t.gauge_reduce(&["G1", "G2"], "H", "x"), Err(Error::GaugeInconsistent(_))));

    let mut t = tables::a_minus_one();
    add_term(&mut t, "H", "G1", "I", ScalarPoly::i_hbar());
    assert!(matches!(t.gauge_reduce(&["G1", "G2"], "H", "x"), Err(Error::GaugeInconsistent(_))));

    let mut t = tables::a_minus_one();
    add_term(&mut t, "H", "G1", "P", ScalarPoly::one());
    assert!(matches!(t.gauge_reduce(&["G1", "G2"], "H", "x"), Err(Error::GaugeInconsistent(_))));
}

#[test]
fn text_format_round_trips_every_table() {
    for t in tables::all() {
        let back = LieTable::from_text(&t.to_string()).unwrap();
        assert!(back.same_structure(&t), "{}", t.name());
        assert_eq!(back.name(), t.name());
    }
}

#[test]
fn discovery_recovers_a_known_bracket() {
    let r = dualsym::liealg::realizations::algebra1_realization();
    let t = tables::algebra1();
    let p = generic_params();
    let (found, resid) = dualsym::liealg::discover_bracket(&r, "H", "Pi", &p, &[0.0, 0.3, 0.7, 1.1]).unwrap();
    assert!(resid < 1e-8, "fit residual {resid}");
    for (name, c) in t.bracket("H", "Pi").unwrap() {
        let v = c.eval(&p).unwrap();
        let key = if name == t.central() { "1".to_string() } else { name.clone() };
        let got = found.iter().find(|(n, _)| *n == key).map(|(_, v)| *v).unwrap_or_default();
        assert!((got - v).norm() < 1e-8, "{name}: {got} vs {v}");
    }
}
