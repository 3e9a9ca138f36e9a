use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinvol::regge::{canonicalize, Diagonal, QuadSpins};
use spinvol::volume::{
    build_k_matrix, diagonalize, eigenfunction_grid, eigenvalues, oracle_k_matrix, phase_space_count, potentials,
    u_plus,
};

fn closed_quads(max_twice: i64) -> Vec<QuadSpins> {
    let mut out = Vec::new();
    for a in 0..=max_twice {
        for b in 0..=max_twice {
            for c in 0..=max_twice {
                for d in 0..=max_twice {
                    let q = QuadSpins::from_twice([a, b, c, d]);
                    if q.closes() {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn tridiagonal_spectrum_matches_oracle() {
    let mut checked = 0;
    for q in closed_quads(4) {
        let oracle = oracle_k_matrix(&q).unwrap();
        let n = canonicalize(&q).unwrap();
        let ev = eigenvalues(&build_k_matrix(&n, Diagonal::X)).unwrap();
        assert_eq!(ev.len(), oracle.dim, "{q}");
        let scale = ev.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
        for (a, b) in ev.iter().zip(&oracle.eigenvalues) {
            assert!((a - b).abs() <= 1e-10 * scale, "{q}: {a} vs {b}");
        }
        assert!(oracle.leakage < 1e-10);
        checked += 1;
    }
    assert!(checked > 200, "{checked}");
}

#[test]
fn spectra_agree_across_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 50 {
        let t: [i64; 4] = std::array::from_fn(|_| rng.gen_range(0..=60));
        let Ok(n) = canonicalize(&QuadSpins::from_twice(t)) else { continue };
        if n.quad.a.twice() > 20 {
            continue;
        }
        let spectra: Vec<Vec<f64>> =
            Diagonal::ALL.iter().map(|&d| eigenvalues(&build_k_matrix(&n, d)).unwrap()).collect();
        let scale = spectra[0].iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
        for s in &spectra[1..] {
            assert_eq!(s.len(), spectra[0].len());
            for (a, b) in s.iter().zip(&spectra[0]) {
                assert!((a - b).abs() <= 1e-10 * scale, "{}: {a} vs {b}", n.quad);
            }
        }
        done += 1;
    }
}

#[test]
fn eigenvalues_lie_under_the_potentials() {
    for q in [[30, 45, 55, 60], [100, 110, 130, 140], [100, 100, 100, 100]] {
        let n = canonicalize(&QuadSpins::from_int(q)).unwrap();
        let p = potentials(&n, 2001, 0.5);
        let ev = eigenvalues(&build_k_matrix(&n, Diagonal::X)).unwrap();
        let (lo, hi) = (p.min_minus() * 1.05, p.max_plus() * 1.05);
        assert!(ev.iter().all(|&l| l >= lo && l <= hi), "{q:?}: {} vs {}", ev.last().unwrap(), p.max_plus());
    }
}

#[test]
fn eigenvectors_live_in_the_allowed_band() {
    let n = canonicalize(&QuadSpins::from_int([100; 4])).unwrap();
    let t = build_k_matrix(&n, Diagonal::X);
    let spec = diagonalize(&t).unwrap();
    let grid = eigenfunction_grid(&spec);
    let labels: Vec<f64> = t.labels.iter().map(|x| x.to_f64()).collect();
    let allowed: Vec<Vec<bool>> =
        spec.eigenvalues.iter().map(|l| labels.iter().map(|&x| l.abs() <= u_plus(&n, x, 0.5)).collect()).collect();
    for (k, row) in grid.iter().enumerate() {
        let big = row.iter().copied().fold(0.0, f64::max);
        for (i, &v) in row.iter().enumerate() {
            // Half the peak: evanescent tails past the turning points reach
            // further at lower cutoffs.
            if v > 0.5 * big {
                let lo = i.saturating_sub(3);
                let hi = (i + 3).min(row.len() - 1);
                assert!((lo..=hi).any(|j| allowed[k][j]), "k={k} x={}", labels[i]);
            }
        }
    }
}

#[test]
fn eigenvalue_count_tracks_phase_space() {
    let n = canonicalize(&QuadSpins::from_int([100; 4])).unwrap();
    let ev = eigenvalues(&build_k_matrix(&n, Diagonal::X)).unwrap();
    let top = potentials(&n, 2001, 0.5).max_plus();
    let mut last = (0usize, 0.0f64);
    for k in 0..=40 {
        let v = top * k as f64 / 40.0;
        let quantum = ev.iter().filter(|&&l| l >= 0.0 && l <= v).count();
        let classical = phase_space_count(&n, v, 2001, 0.5);
        assert!(quantum >= last.0 && classical >= last.1);
        assert!((quantum as f64 - classical).abs() <= 3.0, "V={v}: {quantum} vs {classical}");
        last = (quantum, classical);
    }
}

#[test]
fn large_spectrum_is_fast() {
    let n = canonicalize(&QuadSpins::from_int([1000; 4])).unwrap();
    let start = std::time::Instant::now();
    let t = build_k_matrix(&n, Diagonal::X);
    let ev = eigenvalues(&t).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(ev.len(), 2001);
    assert_eq!(ev[1000], 0.0);
    if !cfg!(debug_assertions) {
        assert!(elapsed.as_secs_f64() < 1.0, "{elapsed:?}");
    }
}
