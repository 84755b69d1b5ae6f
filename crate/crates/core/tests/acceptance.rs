//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p hamembed-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use hamembed::adiabatic::{
    flip_all_but_term, flip_all_embedded, flip_all_term, ground_indices, interpolate,
    paired_flip_all, spin_glass, standard_driver, Schedule,
};
use hamembed::dense::{
    basis_map, check_decoupling, evolve, evolve_sampled, gate_unitary, restrict, spectrum,
    spectrum_of, to_matrix, DenseOperator, EvolutionSpec, Sign, StateVector,
};
use hamembed::embedding::{
    build_gate_sequence, choose_factorization, embed_all, embed_case1, embed_case2,
    embed_scheduled, irrelevant_hamiltonian, FactorMask,
};
use hamembed::pauli::{hamiltonian_locality, Hamiltonian, PauliAxis, PauliString, PauliTerm};
use hamembed::protocol::{
    decode, encode, reinterpret_bits, reinterpreted_distribution, shortcut_ensemble,
    DEFAULT_LEAKAGE_THRESHOLD,
};
use hamembed::schedule::{ScheduleFn, ScheduledHamiltonian};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_instance, random_mask, random_spin_glass, random_string};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn fmax(a: f64, b: f64) -> f64 {
    if b > a {
        b
    } else {
        a
    }
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Criteria 1 to 3 share one corpus of 120 random embeddings.
struct Corpus {
    decoupling: f64,
    plus_block: f64,
    minus_block: f64,
    spectrum: f64,
    size: usize,
}

fn corpus() -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0001);
    let mut c = Corpus {
        decoupling: 0.0,
        plus_block: 0.0,
        minus_block: 0.0,
        spectrum: 0.0,
        size: 0,
    };
    for i in 0..120 {
        let n = 3 + i % 4;
        let (h, chi) = random_instance(&mut rng, n, 20);
        let mask = random_mask(&mut rng, &chi.string);
        let emb = embed_case2(&h, &chi, &mask).unwrap();
        let map = basis_map::<f64>(&emb.gates, n).unwrap();
        c.decoupling = fmax(c.decoupling, check_decoupling(&emb.physical, &map).unwrap());

        let direct = to_matrix(&h).unwrap();
        let irr = irrelevant_hamiltonian(&h, &chi).unwrap();
        let irr_m = to_matrix(&irr).unwrap();
        let plus = restrict(&emb.physical, &map, Sign::Plus).unwrap();
        let minus = restrict(&emb.physical, &map, Sign::Minus).unwrap();
        c.plus_block = fmax(c.plus_block, plus.max_deviation(&direct));
        c.minus_block = fmax(c.minus_block, minus.max_deviation(&irr_m));

        let mut union = spectrum_of(&direct);
        union.extend(spectrum_of(&irr_m));
        union.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let phys = spectrum(&emb.physical).unwrap();
        let dev = phys
            .iter()
            .zip(&union)
            .fold(0.0, |m, (a, b)| fmax(m, (a - b).abs()));
        c.spectrum = fmax(c.spectrum, dev);
        c.size += 1;
    }
    c
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0004);
    let tau = 5.0;
    let mut amp_dev: f64 = 0.0;
    let mut leak: f64 = 0.0;
    for i in 0..20 {
        let n = 3 + i % 3;
        let (a, chi) = random_instance(&mut rng, n, 12);
        let (mut b, _) = random_instance(&mut rng, n, 12);
        if rng.random_bool(0.5) {
            b.push(PauliTerm::new(common::coefficient(&mut rng), chi.string.clone()))
                .unwrap();
        }
        let h = ScheduledHamiltonian::new(
            n,
            vec![
                (ScheduleFn::ramp_down(tau), a),
                (ScheduleFn::ramp_up(tau), b.normalized()),
            ],
        )
        .unwrap();
        let mask = random_mask(&mut rng, &chi.string);
        let emb = embed_scheduled(&h, &chi.string, &mask).unwrap();
        let psi0 = StateVector::<f64>::random(n, &mut rng);
        let direct = evolve_sampled(&EvolutionSpec::new(h, tau, 2000), &psi0, 100).unwrap();
        let physical = evolve_sampled(
            &EvolutionSpec::new(emb.physical.clone(), tau, 2000),
            &encode(&psi0, &emb.gates).unwrap(),
            100,
        )
        .unwrap();
        let map = basis_map::<f64>(&emb.gates, n).unwrap();
        for ((_, psi), (_, psi_t)) in direct.samples.iter().zip(&physical.samples) {
            amp_dev = fmax(amp_dev, map.coordinates(psi_t, Sign::Plus).max_deviation(psi));
            leak = fmax(leak, map.population(psi_t, Sign::Minus));
        }
    }
    check(
        amp_dev <= 1e-8 && leak <= 1e-10,
        format!("20 instances, max |<n+|psi~> - <n|psi>| = {amp_dev:.2e}, max |-> population = {leak:.2e}"),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
    let mut mismatches = 0;
    let mut one_local_z = 0;
    let mut max_locality = 0;
    for i in 0..20 {
        let n = 2 + i % 4;
        let g = random_spin_glass(&mut rng, n);
        let b: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
        let b0 = rng.random_range(0.1..1.0);
        let mut h0 = standard_driver(&b).unwrap();
        h0.push(flip_all_term(b0, n)).unwrap();
        let hp = spin_glass(&g);
        let sched = interpolate(&h0.normalized(), &hp, &Schedule::linear(1.0)).unwrap();
        let chi = PauliString::uniform(n, PauliAxis::X);
        let emb = embed_scheduled(&sched, &chi, &FactorMask::full_support(&chi)).unwrap();
        let (driver, problem) = flip_all_embedded(&g, &b, b0).unwrap();
        let pieces = emb.physical.pieces();
        if pieces[0].1 != driver || pieces[1].1 != problem {
            mismatches += 1;
        }
        // single-piece path through embed_case1 on the driver
        let driver_case1 = embed_case1(&h0, &flip_all_term(b0, n)).unwrap();
        if driver_case1.physical != driver {
            mismatches += 1;
        }
        one_local_z += problem.terms().iter().filter(|t| t.locality() == 1).count();
        max_locality = max_locality.max(emb.physical.locality());
    }
    check(
        mismatches == 0 && one_local_z == 0 && max_locality == 2,
        format!("20 instances, {mismatches} mismatches, {one_local_z} 1-local z terms, locality {max_locality}"),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0006);
    let mut case1 = Vec::new();
    let mut case2 = Vec::new();
    let mut chosen = Vec::new();
    for i in 0..10 {
        let n = 3 + i % 3;
        let g = random_spin_glass(&mut rng, n);
        assert!((1..n).any(|j| g.coupling(j, 0) != 0.0));
        let b: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
        let chi = flip_all_but_term(rng.random_range(0.1..1.0), n, 0);
        let mut h = standard_driver(&b).unwrap();
        h.push(chi.clone()).unwrap();
        let h = h.add(&spin_glass(&g)).unwrap();
        case1.push(hamiltonian_locality(&embed_case1(&h, &chi).unwrap().physical));
        // χ′ = X on every qubit, χ″ = X on qubit 0
        let all_x = FactorMask::new(&chi.string, vec![true; n], Some(PauliAxis::X)).unwrap();
        let e2 = embed_case2(&h, &chi, &all_x).unwrap();
        assert_eq!(e2.chi_double_prime(), &PauliString::from_support(n, &[0], PauliAxis::X));
        case2.push(hamiltonian_locality(&e2.physical));
        let best = choose_factorization(&h, &chi, 16).unwrap();
        chosen.push(hamiltonian_locality(&embed_case2(&h, &chi, &best).unwrap().physical));
    }
    check(
        case1.iter().all(|&l| l == 3) && case2.iter().all(|&l| l == 2) && chosen.iter().all(|&l| l == 2),
        format!("10 instances, case 1 localities {case1:?}, case 2 {case2:?}, chosen {chosen:?}"),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0007);
    let mut dev: f64 = 0.0;
    let mut probs = Vec::new();
    for i in 0..10 {
        let n = 2 + i % 4;
        let g = random_spin_glass(&mut rng, n);
        let b: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
        let b0 = rng.random_range(0.1..0.4);
        let r = paired_flip_all(&g, &b, b0, &Schedule::linear(10.0), 1000, None).unwrap();
        dev = fmax(dev, (r.original.success_probability - r.embedded.success_probability).abs());
        probs.push(format!("{:.3}", r.original.success_probability));
    }
    check(
        dev <= 1e-8,
        format!("10 instances, max |P_orig - P_emb| = {dev:.2e}, P = [{}]", probs.join(", ")),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0008);
    let mut round_trip: f64 = 0.0;
    let mut end_to_end: f64 = 0.0;
    let mut leak: f64 = 0.0;
    for i in 0..50 {
        let n = 1 + i % 5;
        let k = rng.random_range(0..=n);
        let chi_prime = random_string(&mut rng, n, k);
        let gates = build_gate_sequence(&chi_prime, 0);
        let psi = StateVector::<f64>::random(n, &mut rng);
        let d = decode(&encode(&psi, &gates).unwrap(), &gates, DEFAULT_LEAKAGE_THRESHOLD).unwrap();
        round_trip = fmax(round_trip, d.state.max_deviation(&psi));
    }
    for i in 0..10 {
        let n = 3 + i % 3;
        let (h, chi) = random_instance(&mut rng, n, 15);
        let mask = random_mask(&mut rng, &chi.string);
        let emb = embed_case2(&h, &chi, &mask).unwrap();
        let psi = StateVector::<f64>::random(n, &mut rng);
        let direct = evolve(&EvolutionSpec::new(ScheduledHamiltonian::constant(h), 3.0, 50), &psi).unwrap();
        let evolved = evolve(
            &EvolutionSpec::new(ScheduledHamiltonian::constant(emb.physical.clone()), 3.0, 50),
            &encode(&psi, &emb.gates).unwrap(),
        )
        .unwrap();
        let d = decode(&evolved, &emb.gates, DEFAULT_LEAKAGE_THRESHOLD).unwrap();
        end_to_end = fmax(end_to_end, d.state.max_deviation(&direct));
        leak = fmax(leak, d.leakage);
    }
    check(
        round_trip <= 1e-12 && end_to_end <= 1e-8,
        format!("50 round trips max dev {round_trip:.2e}; 10 pipelines max dev {end_to_end:.2e}, leakage {leak:.2e}"),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0009);
    let mut worst_fidelity: f64 = 1.0;
    for i in 0..20 {
        let n = 3 + i % 3;
        let (h, chi) = random_instance(&mut rng, n, 15);
        let mask = random_mask(&mut rng, &chi.string);
        let emb = embed_case2(&h, &chi, &mask).unwrap();
        let raw = StateVector::<f64>::random(n, &mut rng);
        let psi0 = raw.add(&raw.apply_pauli(emb.chi_prime()).unwrap()).normalized();
        let spec = EvolutionSpec::new(ScheduledHamiltonian::constant(emb.physical.clone()), 2.0, 40);
        let full = evolve(&spec, &encode(&psi0, &emb.gates).unwrap()).unwrap();
        let full = decode(&full, &emb.gates, DEFAULT_LEAKAGE_THRESHOLD).unwrap().state;
        let skipped = evolve(&spec, &StateVector::uniform(1).tensor(&psi0)).unwrap();
        for branch in shortcut_ensemble(&skipped, emb.chi_prime()).unwrap() {
            worst_fidelity = worst_fidelity.min(branch.state.fidelity(&full));
        }
    }

    // flip-all anneal with negative fields: |+…+⟩ is invariant under X…X
    let mut prob_dev: f64 = 0.0;
    let mut invalid = 0;
    for i in 0..6 {
        let n = 2 + i % 4;
        let g = random_spin_glass(&mut rng, n);
        let b: Vec<f64> = (0..n).map(|_| -rng.random_range(0.5..1.5)).collect();
        let b0 = -rng.random_range(0.1..0.4);
        let schedule = Schedule::linear(10.0);
        let paired = paired_flip_all(&g, &b, b0, &schedule, 500, None).unwrap();
        let chi = PauliString::uniform(n, PauliAxis::X);
        let (driver, problem) = flip_all_embedded(&g, &b, b0).unwrap();
        let sched = interpolate(&driver, &problem, &schedule).unwrap();
        let psi0 = StateVector::<f64>::uniform(n);
        let skipped = evolve(&EvolutionSpec::new(sched, 10.0, 500), &StateVector::uniform(1).tensor(&psi0)).unwrap();
        let dist = reinterpreted_distribution(&skipped, &chi).unwrap();
        let (_, ground) = ground_indices(&spin_glass(&g)).unwrap();
        let p: f64 = ground.iter().map(|&k| dist[k]).sum();
        prob_dev = fmax(prob_dev, (p - paired.original.success_probability).abs());
        // every embedded ground sample reinterprets to an original ground state
        let (_, emb_ground) = ground_indices(&problem).unwrap();
        for idx in emb_ground {
            let bits = hamembed::dense::index_to_bits(idx, n + 1);
            let mapped = reinterpret_bits(&bits[1..], bits[0] as u8, &chi).unwrap();
            if !ground.contains(&hamembed::dense::bits_to_index(&mapped)) {
                invalid += 1;
            }
        }
    }
    check(
        worst_fidelity >= 1.0 - 1e-10 && prob_dev <= 1e-8 && invalid == 0,
        format!(
            "20 invariant states, worst branch fidelity 1 - {:.2e}; 6 anneals, max |P_shortcut - P_direct| = {prob_dev:.2e}, {invalid} invalid reinterpretations",
            1.0 - worst_fidelity
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0010);
    let mut block_dev: f64 = 0.0;
    let mut square_dev: f64 = 0.0;
    for i in 0..50 {
        let n = 1 + i % 5;
        let k = rng.random_range(0..=n);
        let chi_prime = random_string(&mut rng, n, k);
        let u = gate_unitary::<f64>(&build_gate_sequence(&chi_prime, 0), n).unwrap();
        // |0⟩⟨0|⊗𝟙 + |1⟩⟨1|⊗O = ½(I⊗𝟙 + Z⊗𝟙 + I⊗O − Z⊗O)
        let id = PauliString::identity(n);
        let block = Hamiltonian::new(
            n + 1,
            vec![
                PauliTerm::new(0.5, id.prepend(PauliAxis::I)),
                PauliTerm::new(0.5, id.prepend(PauliAxis::Z)),
                PauliTerm::new(0.5, chi_prime.prepend(PauliAxis::I)),
                PauliTerm::new(-0.5, chi_prime.prepend(PauliAxis::Z)),
            ],
        )
        .unwrap();
        let expected = to_matrix(&block.normalized()).unwrap();
        block_dev = fmax(block_dev, u.max_deviation(&expected));
        let squared = DenseOperator {
            n_qubits: n + 1,
            matrix: &u.matrix * &u.matrix,
        };
        square_dev = fmax(square_dev, squared.max_deviation(&DenseOperator::identity(n + 1)));
    }
    check(
        block_dev <= 1e-12 && square_dev <= 1e-12,
        format!("50 strings, block form dev {block_dev:.2e}, U^2 - 1 dev {square_dev:.2e}"),
    )
}

fn criterion_11() -> Outcome {
    let h = Hamiltonian::from_pairs(
        4,
        [
            (0.7, "IIYZ"),
            (0.9, "IXYY"),
            (1.1, "IXZY"),
            (-0.4, "IYIY"),
            (0.6, "IYZI"),
            (-0.8, "IZIZ"),
            (0.5, "ZIIZ"),
        ],
    )
    .unwrap();
    let first = PauliTerm::new(1.1, "IXZY".parse().unwrap());
    let second = PauliTerm::new(0.9, "IXYY".parse().unwrap());
    let adversarial = embed_all(&h, &[first.clone(), second.clone()], 16).unwrap();
    let benign = embed_all(&h, &[second, first], 16).unwrap();
    let mut decoupling: f64 = 0.0;
    for round in &adversarial.rounds {
        let e = &round.embedding;
        let map = basis_map::<f64>(&e.gates, e.n_system()).unwrap();
        decoupling = fmax(decoupling, check_decoupling(&e.physical, &map).unwrap());
    }
    let per_round: Vec<usize> = adversarial.rounds.iter().map(|r| r.embedding.locality_after()).collect();
    check(
        adversarial.locality() == 4
            && adversarial.ancilla_count() == 2
            && adversarial.physical.n_qubits() == 6
            && benign.locality() == 3
            && decoupling <= 1e-12,
        format!(
            "final locality {} with {} ancillas (per round {per_round:?}); reversed order gives {}; round decoupling {decoupling:.2e}",
            adversarial.locality(),
            adversarial.ancilla_count(),
            benign.locality()
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    let corpus_time = start.elapsed().as_secs_f64();
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (
            1,
            "decoupling",
            check(
                corpus.decoupling <= 1e-12 && corpus_time <= 60.0,
                format!(
                    "{} embeddings, max off-block element {:.2e}, {corpus_time:.1}s",
                    corpus.size, corpus.decoupling
                ),
            ),
        ),
        (
            2,
            "block equivalence",
            check(
                corpus.plus_block <= 1e-12 && corpus.minus_block <= 1e-12,
                format!(
                    "max |restrict(+) - H| = {:.2e}, max |restrict(-) - H_irr| = {:.2e}",
                    corpus.plus_block, corpus.minus_block
                ),
            ),
        ),
        (
            3,
            "spectrum union",
            check(corpus.spectrum <= 1e-9, format!("max eigenvalue deviation {:.2e}", corpus.spectrum)),
        ),
    ];
    let rest: [Criterion; 8] = [
        (4, "dynamics equivalence", criterion_4),
        (5, "closed-form reproduction", criterion_5),
        (6, "factorized advantage", criterion_6),
        (7, "success-rate equivalence", criterion_7),
        (8, "protocol round trip", criterion_8),
        (9, "shortcut equivalence", criterion_9),
        (10, "unitary structure", criterion_10),
        (11, "multiple-term ledger", criterion_11),
    ];
    for (id, name, f) in rest {
        results.push((id, name, f()));
    }
    let mut failed = 0;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(d) => println!("criterion {id:>2} {name}: PASS ({d})"),
            Err(d) => {
                failed += 1;
                println!("criterion {id:>2} {name}: FAIL ({d})");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
