//! Acceptance suite: every exit criterion checked exactly, one pass/fail
//! line per criterion (run with `--nocapture` to see the lines on
//! success). All equality checks are exact; there are no tolerances
//! anywhere, only the two stated wall-clock budgets.

use std::time::Instant;

use num_traits::{One, Zero};

use llvkit::sample::{
    degree_swap, random_degree_reversing, random_gamma0, random_in_range, random_isometry,
    random_isotropic, random_nonisotropic, random_nonisotropic_signed, random_so_element,
    random_sp_element, random_vector, rng_from_seed,
};
use llvkit::{
    adjoint_f, bfield, check_degree_reversing, commutator, compose, derivation_action,
    diagonal_twistor, ext_gcd, fujiki_coefficient, gamma0_embed, gamma0_member, grading_h,
    hard_lefschetz_check, hard_lefschetz_levels, is_isometry, is_period_point, laplacian,
    lefschetz_e, lsc_certificate, phi_kappa, rat_int, realize, so_membership, sym_dim,
    tilde, twistor_space, BBFLattice, ChernData, FujikiValue, Int, MukaiExtension, PeriodPoint,
    QMatrix, QVector, Rat, SpElement, SpParams, SymBasis,
};
use llvkit_cli::{run_suite, Scenario};

fn conclude(number: u32, label: &str, passed: bool, started: Instant) {
    let status = if passed { "PASS" } else { "FAIL" };
    println!(
        "acceptance criterion {number:02} ({label}): {status} [{:.2?}]",
        started.elapsed()
    );
    assert!(passed, "criterion {number:02} ({label}) failed");
}

fn kummer_ext(n: u32) -> MukaiExtension {
    MukaiExtension::new(BBFLattice::kummer(n).unwrap()).unwrap()
}

#[test]
fn acceptance_01_sl2_relations_exact() {
    let started = Instant::now();
    let mut rng = rng_from_seed(101);
    let mut ok = true;
    for n in [2u32, 3] {
        let ext = kummer_ext(n);
        let lattice = ext.base().clone();
        let h = grading_h(&ext).matrix;
        for _ in 0..25 {
            let v = random_nonisotropic(&mut rng, &lattice, 20);
            let e = lefschetz_e(&ext, &v).unwrap().matrix;
            let f = adjoint_f(&ext, &v).unwrap().matrix;
            ok &= commutator(&e, &f).unwrap() == h;
            ok &= commutator(&h, &e).unwrap() == e.scale(&rat_int(2));
            ok &= commutator(&h, &f).unwrap() == f.scale(&rat_int(-2));
        }
    }
    let within_budget = started.elapsed().as_secs_f64() < 5.0;
    conclude(1, "sl2 exact bracket relations, < 5 s", ok && within_budget, started);
}

#[test]
fn acceptance_02_exact_sequence_dimensions() {
    let started = Instant::now();
    let ext = kummer_ext(2);
    let d = ext.dim();
    assert_eq!(d, 9);
    let mut ok = true;
    for n in [2u32, 3, 4] {
        let basis = SymBasis::new(&ext, n);
        let (delta, target) = laplacian(&basis).unwrap();
        let dense = delta.to_qmatrix();
        let expected_rank = sym_dim(d, n - 2);
        let expected_kernel = sym_dim(d, n) - expected_rank;
        ok &= dense.rank() == expected_rank;
        ok &= dense.kernel_basis().len() == expected_kernel;
        ok &= target.len() == expected_rank;
        match n {
            2 => ok &= expected_kernel == 44,
            3 => ok &= expected_kernel == 156,
            _ => {}
        }
    }
    let within_budget = started.elapsed().as_secs_f64() < 30.0;
    conclude(
        2,
        "Laplacian surjective, kernel dims 44/156/450, < 30 s",
        ok && within_budget,
        started,
    );
}

#[test]
fn acceptance_03_laplacian_is_a_module_map() {
    let started = Instant::now();
    let ext = kummer_ext(2);
    let lattice = ext.base().clone();
    let mut rng = rng_from_seed(103);
    let mut ok = true;
    for n in [2u32, 3] {
        let basis = SymBasis::new(&ext, n);
        let (delta, target) = laplacian(&basis).unwrap();
        for _ in 0..10 {
            let v = random_nonisotropic(&mut rng, &lattice, 20);
            for op in [
                lefschetz_e(&ext, &v).unwrap(),
                adjoint_f(&ext, &v).unwrap(),
                grading_h(&ext),
            ] {
                let d_src = derivation_action(&op, &basis).unwrap();
                let d_tgt = derivation_action(&op, &target).unwrap();
                for col in 0..basis.len() {
                    ok &= delta.apply_entries(d_src.column(col))
                        == d_tgt.apply_entries(delta.column(col));
                }
            }
        }
    }
    conclude(3, "Laplacian commutes with the LLV derivations", ok, started);
}

#[test]
fn acceptance_04_hard_lefschetz_ranks() {
    let started = Instant::now();
    let mut rng = rng_from_seed(104);
    let mut ok = true;
    for lattice_n in [2u32, 3] {
        let ext = kummer_ext(lattice_n);
        let lattice = ext.base().clone();
        for sym_n in [2u32, 3] {
            let basis = SymBasis::new(&ext, sym_n);
            for i in 0..10 {
                let f = random_nonisotropic_signed(&mut rng, &lattice, 20, i % 2 == 0);
                let report = hard_lefschetz_check(&basis, &f).unwrap();
                ok &= report.all_full_rank;
            }
            let mut drops = 0usize;
            for _ in 0..5 {
                let f = random_isotropic(&mut rng, &lattice, 20).unwrap();
                let report = hard_lefschetz_levels(&basis, &f).unwrap();
                if !report.all_full_rank {
                    drops += 1;
                }
            }
            ok &= drops == 5;
        }
    }
    conclude(
        4,
        "hard Lefschetz full rank; isotropic classes drop rank",
        ok,
        started,
    );
}

#[test]
fn acceptance_05_fujiki_proportionality() {
    let started = Instant::now();
    let ext = kummer_ext(2);
    let lattice = ext.base().clone();
    let mut rng = rng_from_seed(105);
    let mut ok = true;
    for (n, expected) in [(2u32, 3i64), (3, 15)] {
        let basis = SymBasis::new(&ext, n);
        let mut seen = Vec::new();
        for _ in 0..10 {
            let f = random_nonisotropic(&mut rng, &lattice, 20);
            match fujiki_coefficient(&basis, &f).unwrap() {
                FujikiValue::Constant(c) => {
                    ok &= c == rat_int(expected);
                    seen.push(c);
                }
                FujikiValue::IsotropicTop(_) => ok = false,
            }
        }
        ok &= seen.windows(2).all(|w| w[0] == w[1]);
        for _ in 0..5 {
            let f = random_isotropic(&mut rng, &lattice, 20).unwrap();
            match fujiki_coefficient(&basis, &f).unwrap() {
                FujikiValue::IsotropicTop(top) => ok &= top.is_zero(),
                FujikiValue::Constant(_) => ok = false,
            }
        }
    }
    conclude(5, "model constant 3 and 15, isotropic top vanishes", ok, started);
}

#[test]
fn acceptance_06_degree_reversal_transport() {
    let started = Instant::now();
    let ext = kummer_ext(2);
    let lattice = ext.base().clone();
    let rank = lattice.rank();
    let mut rng = rng_from_seed(106);
    let mut ok = true;

    for _ in 0..25 {
        let r = random_in_range(&mut rng, 1, 6);
        let cd = ChernData::new(
            r,
            random_vector(&mut rng, rank, 20),
            random_vector(&mut rng, rank, 20),
        )
        .unwrap();
        let tau = random_degree_reversing(&mut rng, &ext, 20);
        let scale = Rat::one() / rat_int(i64::from(r));
        let phi = bfield(&ext, &cd.lambda_y.scale(&scale))
            .unwrap()
            .mul(&tau)
            .unwrap()
            .mul(&bfield(&ext, &cd.lambda_x.scale(&scale)).unwrap())
            .unwrap();
        let transported = phi_kappa(&ext, &ext, &phi, &cd).unwrap();
        ok &= check_degree_reversing(&ext, &ext, &transported).unwrap();
        ok &= is_isometry(ext.pairing(), &transported).unwrap();
    }

    for _ in 0..25 {
        let r = i64::from(random_in_range(&mut rng, 1, 6));
        let v = random_vector(&mut rng, rank, 20);
        let q = lattice.form().norm(&v).unwrap();
        let dressed = ext
            .alpha()
            .scale(&rat_int(r))
            .add(&ext.embed_base(&v).unwrap())
            .unwrap()
            .add(&ext.beta().scale(&(q / rat_int(2 * r))))
            .unwrap();
        let b = bfield(&ext, &v.scale(&(-Rat::one() / rat_int(r)))).unwrap();
        ok &= b.mul_vec(&dressed).unwrap() == ext.alpha().scale(&rat_int(r));
    }
    conclude(
        6,
        "kappa transport reverses degrees; B-field cancellation exact",
        ok,
        started,
    );
}

#[test]
fn acceptance_07_lsc_certificates() {
    let started = Instant::now();
    let ext = kummer_ext(2);
    let lattice = ext.base().clone();
    let mut rng = rng_from_seed(107);
    let mut ok = true;

    let reversers: Vec<QMatrix> = (0..10)
        .map(|_| random_degree_reversing(&mut rng, &ext, 20))
        .collect();
    let classes: Vec<QVector> = (0..10)
        .map(|_| random_nonisotropic(&mut rng, &lattice, 20))
        .collect();
    for phi in &reversers {
        for f in &classes {
            match lsc_certificate(&ext, phi, f) {
                Ok(cert) => {
                    ok &= !cert.scalar.is_zero();
                    let lowering = adjoint_f(&ext, f).unwrap();
                    ok &= cert.operator.matrix == lowering.matrix.scale(&cert.scalar);
                }
                Err(_) => ok = false,
            }
        }
    }
    let tau = degree_swap(&ext);
    for f in &classes {
        let cert = lsc_certificate(&ext, &tau, f).unwrap();
        ok &= cert.scalar == lattice.form().norm(f).unwrap() / rat_int(2);
    }
    conclude(
        7,
        "conjugates equal scalar times the adjoint; swap scalar q(f,f)/2",
        ok,
        started,
    );
}

#[test]
fn acceptance_08_so_conjugation() {
    let started = Instant::now();
    let ext = kummer_ext(2);
    let mut rng = rng_from_seed(108);
    let mut ok = true;

    let isometries: Vec<QMatrix> = (0..10)
        .map(|_| random_isometry(&mut rng, &ext, 20))
        .collect();
    let elements: Vec<QMatrix> = (0..10)
        .map(|_| random_so_element(&mut rng, &ext, 20))
        .collect();
    for phi in &isometries {
        let inv = phi.inverse().unwrap();
        for m in &elements {
            let conj = inv.mul(m).unwrap().mul(phi).unwrap();
            ok &= so_membership(&ext, &conj).unwrap();
        }
    }
    let h = grading_h(&ext).matrix;
    for _ in 0..10 {
        let phi = random_degree_reversing(&mut rng, &ext, 20);
        let conj = phi.inverse().unwrap().mul(&h).unwrap().mul(&phi).unwrap();
        ok &= conj == h.neg();
    }
    conclude(
        8,
        "conjugation preserves so; degree reversal negates the grading",
        ok,
        started,
    );
}

#[test]
fn acceptance_09_sp_group_arithmetic() {
    let started = Instant::now();
    let mut rng = rng_from_seed(109);
    let mut ok = true;

    // det(f) = 1 iff the involution inverts, both implications, over a
    // mix guaranteeing many symplectic samples.
    let p = SpParams::new(2, 2).unwrap();
    let mut symplectic_seen = 0usize;
    let mut non_symplectic_seen = 0usize;
    for i in 0..100 {
        let f = if i % 2 == 0 {
            random_sp_element(&mut rng, 9)
        } else {
            let m = random_gamma0(&mut rng, p.level(), 6);
            gamma0_embed(&p, &m).unwrap()
        };
        let symplectic = llvkit::is_symplectic(&p, &f);
        let inverts = compose(&p, &f, &tilde(&f)) == SpElement::identity()
            && compose(&p, &tilde(&f), &f) == SpElement::identity();
        ok &= symplectic == inverts;
        if symplectic {
            symplectic_seen += 1;
        } else {
            non_symplectic_seen += 1;
        }
    }
    ok &= symplectic_seen >= 50 && non_symplectic_seen >= 10;

    // Congruence-subgroup embedding round-trips and is a homomorphism.
    for (e, n_plus_1) in [(2u32, 3u32), (1, 3), (3, 4)] {
        let p = SpParams::new(n_plus_1 - 1, e).unwrap();
        for _ in 0..50 {
            let a = random_gamma0(&mut rng, p.level(), 6);
            let b = random_gamma0(&mut rng, p.level(), 6);
            let fa = gamma0_embed(&p, &a).unwrap();
            let fb = gamma0_embed(&p, &b).unwrap();
            ok &= fa.is_integral() && llvkit::is_symplectic(&p, &fa);
            let ra = realize(&p, &fa);
            ok &= (0..2).all(|r| (0..2).all(|c| *ra.at(r, c) == rat_int(a[r][c])));
            let prod = [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ];
            ok &= gamma0_member(p.level(), &prod);
            ok &= gamma0_embed(&p, &prod).unwrap() == compose(&p, &fa, &fb);
        }
    }

    let bezout = ext_gcd(&Int::from(2), &Int::from(3)).unwrap();
    ok &= bezout.g == Int::from(1) && bezout.m1 == Int::from(2) && bezout.m2 == Int::from(1);

    conclude(
        9,
        "det iff involution; congruence embedding homomorphism; Bezout pair",
        ok,
        started,
    );
}

#[test]
fn acceptance_10_period_and_twistor_witnesses() {
    let started = Instant::now();
    let lattice = BBFLattice::kummer(2).unwrap();
    let mut ok = true;

    let x = QVector::from_ints(&[1, 1, 0, 0, 0, 0, 0]);
    let y = QVector::from_ints(&[0, 0, 1, 1, 0, 0, 0]);
    let omega = QVector::from_ints(&[0, 0, 0, 0, 1, 1, 0]);
    let negative = QVector::unit(7, 6);

    ok &= is_period_point(&lattice, &x, &y).unwrap();
    ok &= !is_period_point(&lattice, &x, &x).unwrap();
    ok &= !is_period_point(&lattice, &x, &negative).unwrap();

    let sigma = PeriodPoint::new(&lattice, x.clone(), y).unwrap();
    let space = twistor_space(&lattice, &sigma, &omega).unwrap();
    ok &= space.gram3 == QMatrix::diagonal(&[rat_int(2), rat_int(2), rat_int(2)]);
    ok &= twistor_space(&lattice, &sigma, &negative).is_err();
    ok &= twistor_space(&lattice, &sigma, &x).is_err();

    for psi in [QMatrix::identity(7), QMatrix::identity(7).neg()] {
        let d = diagonal_twistor(&lattice, &psi, &sigma, &omega).unwrap();
        ok &= d.source.gram3 == d.image.gram3;
        ok &= d.graph_gram == d.source.gram3.scale(&rat_int(2));
    }
    conclude(
        10,
        "period/twistor witnesses accepted, counterexamples rejected",
        ok,
        started,
    );
}

#[test]
fn acceptance_11_structured_report_determinism() {
    let started = Instant::now();
    let scenario = Scenario::from_toml_str(
        r#"
        lattice = "kummer(2)"
        seed = 7
        "#,
    )
    .unwrap();
    let a = run_suite(&scenario).unwrap();
    let b = run_suite(&scenario).unwrap();
    let ok = a.to_json() == b.to_json() && a.all_passed();
    conclude(11, "byte-identical structured reports", ok, started);
}
