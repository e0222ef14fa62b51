//! Acceptance criteria 1-10, one PASS/FAIL line per criterion with the
//! individual checks listed beneath it.
//!
//! Checks marked `known` are evaluated at the stated tolerance and printed as
//! FAIL when they do not hold; they are documented limitations and do not
//! change the exit status. A known check that starts passing does.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use unruh_core::cli::commands;
use unruh_core::cli::config::Settings;
use unruh_core::cli::record::RecordSet;
use unruh_core::entanglement::{self, SPIN_DIMS};
use unruh_core::fock::{self, LadderKind, ModeLabel, ModeRegistry, Region, Species, SpinTag, Wavevector};
use unruh_core::frame::{self, RindlerPoint};
use unruh_core::numerics::{pauli, ComplexMatrix, C64};
use unruh_core::rindler::{self, PhaseConvention, UnruhParams};
use unruh_core::wigner::{self, DisplacedMomentum, SpinorMatrix};

struct Check {
    name: String,
    ok: bool,
    known: bool,
    detail: String,
}

#[derive(Default)]
struct Criterion {
    checks: Vec<Check>,
    notes: Vec<String>,
}

impl Criterion {
    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            ok,
            known: false,
            detail: detail.into(),
        });
    }

    fn known(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            ok,
            known: true,
            detail: detail.into(),
        });
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

#[derive(Default)]
struct Suite {
    unexpected: usize,
}

impl Suite {
    fn run(&mut self, id: u32, title: &str, budget: Duration, body: impl FnOnce(&mut Criterion)) {
        let mut c = Criterion::default();
        let start = Instant::now();
        body(&mut c);
        let elapsed = start.elapsed();
        c.check(
            "runtime",
            elapsed < budget,
            format!("{:.3} s < {} s", elapsed.as_secs_f64(), budget.as_secs()),
        );

        let hard_ok = c.checks.iter().filter(|k| !k.known).all(|k| k.ok);
        let known_fail = c.checks.iter().any(|k| k.known && !k.ok);
        let stale = c.checks.iter().any(|k| k.known && k.ok);
        let status = match (hard_ok, known_fail) {
            (true, false) => "PASS",
            (true, true) => "FAIL (known)",
            (false, _) => "FAIL",
        };
        println!("{status:<12} criterion {id:>2}: {title}");
        for k in &c.checks {
            let tag = match (k.ok, k.known) {
                (true, false) => "ok",
                (false, false) => "FAIL",
                (false, true) => "FAIL (known)",
                (true, true) => "PASS (known failure now holds; update notes)",
            };
            println!("    [{tag}] {}: {}", k.name, k.detail);
        }
        for n in &c.notes {
            println!("    {n}");
        }
        if !hard_ok || stale {
            self.unexpected += 1;
        }
    }
}

fn fermion(region: Region, species: Species) -> ModeLabel {
    ModeLabel::fermion(region, species, Wavevector::Plus, SpinTag::Up)
}

fn omega_grid() -> Vec<f64> {
    (0..=20).map(|i| i as f64 * 0.25).collect()
}

fn criterion_1(c: &mut Criterion) {
    let (m1, m2) = (
        fermion(Region::I, Species::Particle),
        fermion(Region::II, Species::Antiparticle),
    );
    let reg = ModeRegistry::new(vec![m1, m2], 1).unwrap();
    let ops: Vec<(ComplexMatrix, ComplexMatrix)> = [m1, m2]
        .iter()
        .map(|m| {
            (
                fock::fermion_ladder(&reg, m, LadderKind::Annihilate).unwrap(),
                fock::fermion_ladder(&reg, m, LadderKind::Create).unwrap(),
            )
        })
        .collect();
    let id = ComplexMatrix::identity(4);
    let zero = ComplexMatrix::zeros(4, 4);
    let mut worst = 0.0f64;
    for (i, (bi, _)) in ops.iter().enumerate() {
        for (j, (bj, bj_dag)) in ops.iter().enumerate() {
            let expected = if i == j { &id } else { &zero };
            worst = worst.max(bi.anticommutator(bj_dag).max_abs_diff(expected));
            worst = worst.max(bi.anticommutator(bj).max_abs());
        }
    }
    c.check(
        "fermion CAR, 2 modes",
        worst == 0.0,
        format!("max entry deviation {worst:e} (exact)"),
    );

    let n_max = 8;
    let mode = ModeLabel::boson(Region::I, Wavevector::Plus);
    let reg = ModeRegistry::new(vec![mode], n_max).unwrap();
    let b = fock::boson_ladder(&reg, &mode, LadderKind::Annihilate).unwrap();
    let bd = fock::boson_ladder(&reg, &mode, LadderKind::Create).unwrap();
    let mut expected = ComplexMatrix::identity(n_max + 1);
    expected[(n_max, n_max)] -= C64::new((n_max + 1) as f64, 0.0);
    let dev = b.commutator(&bd).max_abs_diff(&expected);
    c.known(
        "truncated boson commutator, n_max = 8, exact",
        dev == 0.0,
        format!("max entry deviation {dev:e}; sqrt(n) * sqrt(n) != n in binary floating point"),
    );
    let ulp_bound = 4.0 * f64::EPSILON * (n_max + 1) as f64;
    c.check(
        "truncated boson commutator, n_max = 8, to rounding",
        dev <= ulp_bound,
        format!("max entry deviation {dev:e} <= 4 eps (n_max + 1) = {ulp_bound:e}"),
    );
}

fn criterion_2(c: &mut Criterion) {
    let grid = [0.0, 0.5, 1.0, 2.0, 5.0];
    let mut worst = 0.0f64;
    let mut convention = None;
    let mut rejected = Vec::new();
    for &w in &grid {
        let params = UnruhParams::from_omega(w).unwrap();
        let vac = rindler::fermion_unruh_vacuum(&params).unwrap();
        let chosen = vac.convention.expect("fermion vacuum records its convention");
        convention = Some(chosen);
        worst = worst.max(rindler::annihilation_residual(&params, chosen).unwrap());
        let other = match chosen {
            PhaseConvention::Verbatim => PhaseConvention::Flipped,
            PhaseConvention::Flipped => PhaseConvention::Verbatim,
        };
        rejected.push((w, rindler::annihilation_residual(&params, other).unwrap()));
    }
    let chosen = convention.unwrap();
    c.check(
        "annihilation under documented convention",
        worst <= 1e-12,
        format!("convention {}, max ||a_R|vac>|| = {worst:e} <= 1e-12", chosen.as_str()),
    );
    let norms: Vec<String> = rejected.iter().map(|(w, n)| format!("omega {w}: {n:.3e}")).collect();
    c.note(format!("rejected-convention norms: {}", norms.join(", ")));
    let all = rejected.iter().all(|(_, n)| *n >= 0.1);
    c.known(
        "rejected convention norm >= 0.1 on the whole grid",
        all,
        "norm is about 2 exp(-pi omega); below 0.1 from omega = 1",
    );
    let low = rejected.iter().filter(|(w, _)| *w <= 0.5).all(|(_, n)| *n >= 0.1);
    c.check(
        "rejected convention norm >= 0.1 at omega in {0, 0.5}",
        low,
        "check discriminates",
    );
    let min_rejected = rejected.iter().map(|(_, n)| *n).fold(f64::INFINITY, f64::min);
    c.check(
        "rejected convention exceeds the acceptance bound everywhere",
        min_rejected > 1e-12,
        format!("min rejected norm {min_rejected:.3e} vs bound 1e-12"),
    );
}

fn criterion_3(c: &mut Criterion) {
    let mut worst = 0.0f64;
    for w in omega_grid() {
        let occ = rindler::occupation_i(&UnruhParams::from_omega(w).unwrap()).unwrap();
        let closed = 1.0 / (1.0 + (2.0 * PI * w).exp());
        worst = worst.max((occ.matrix_expectation - closed).abs());
    }
    c.check(
        "matrix vs 1/(1+e^(2 pi omega)), 21 points",
        worst <= 1e-12,
        format!("max gap {worst:e} <= 1e-12"),
    );
    let zero = rindler::occupation_i(&UnruhParams::from_omega(0.0).unwrap()).unwrap();
    let d = (zero.matrix_expectation - 0.5).abs();
    c.check(
        "omega = 0 occupation",
        d <= 1e-15,
        format!("|<n> - 0.5| = {d:e} <= 1e-15"),
    );
}

fn criterion_4(c: &mut Criterion) {
    let mut worst = 0.0f64;
    for w in omega_grid() {
        let exc = rindler::fermion_excited(&UnruhParams::from_omega(w).unwrap()).unwrap();
        let s = rindler::wedge_schmidt(&exc).unwrap();
        worst = worst.max((s[0] - 1.0).abs());
    }
    c.check(
        "fermion excited state is a product",
        worst <= 1e-12,
        format!("max |s_1 - 1| = {worst:e} <= 1e-12"),
    );
    let params = UnruhParams::from_squeezing(1.0).unwrap();
    let exc = rindler::scalar_excited(&params, fock::DEFAULT_BOSON_CUTOFF, 1).unwrap();
    let s = rindler::wedge_schmidt(&exc).unwrap();
    c.check(
        "scalar excited state (r = 1) is entangled",
        s[1] >= 0.1,
        format!(
            "s_2 = {:.6} >= 0.1 (n_max = {}, deficit {:.1e})",
            s[1],
            fock::DEFAULT_BOSON_CUTOFF,
            exc.truncation_deficit
        ),
    );
}

fn criterion_5(c: &mut Criterion) {
    let p = wigner::kinematics(1.0, 1.0).unwrap();
    let at_rest = entanglement::spin_pair_report(&p, 0.0).unwrap();
    let d = (at_rest.negativity.exact - 1.0).abs();
    c.check(
        "exact E_N at deta = 0",
        d <= 1e-12,
        format!("|E_N - 1| = {d:e} <= 1e-12"),
    );
    let c0 = entanglement::closed_form_negativity(&p, 0.0).unwrap();
    c.check("closed form at deta = 0", c0 == 1.0, format!("{c0}"));
    let c20 = entanglement::closed_form_negativity(&p, 20.0).unwrap();
    c.check(
        "closed form at deta = 20, delta = 1",
        c20 <= 1e-3,
        format!("{c20:.4e} <= 1e-3"),
    );

    let rows = entanglement::negativity_gap_table(&p, &[1e-2, 1e-3, 1e-4]).unwrap();
    c.note("deta        exact(renorm)          closed                 gap        order  | gap(unnorm) order");
    for r in &rows {
        c.note(format!(
            "{:<10.0e}  {:.15}  {:.15}  {:.3e}  {:>5}  | {:.3e}   {:>5}",
            r.deta,
            r.exact,
            r.closed,
            r.gap,
            r.order.map_or("-".into(), |o| format!("{o:.2}")),
            r.gap_unnormalized,
            r.order_unnormalized.map_or("-".into(), |o| format!("{o:.2}")),
        ));
    }
    let shrinking = rows.windows(2).all(|w| w[1].gap < w[0].gap);
    let last = rows.last().unwrap().gap;
    c.check(
        "gap vanishes as deta -> 0",
        shrinking && last < 1e-3,
        format!("gaps decrease monotonically, gap(1e-4) = {last:.3e}"),
    );
}

fn criterion_6(c: &mut Criterion) {
    let p = wigner::kinematics(1.0, 1.0).unwrap();
    let at_rest = entanglement::spin_pair_report(&p, 0.0).unwrap();
    let d = (at_rest.mutual.exact - 2.0).abs();
    c.check("exact I at deta = 0", d <= 1e-10, format!("|I - 2| = {d:e} <= 1e-10"));

    let [s1, ..] = pauli();
    let flipped =
        entanglement::apply_wigner_to_rob(&entanglement::spin_bell_state(), &SpinorMatrix::new(s1).unwrap(), true)
            .unwrap();
    let i = entanglement::mutual_information(&flipped.density(), &SPIN_DIMS)
        .unwrap()
        .exact;
    c.check(
        "exact I under D = sigma_1",
        (i - 2.0).abs() <= 1e-10,
        format!("|I - 2| = {:e} <= 1e-10", (i - 2.0).abs()),
    );

    let far = entanglement::closed_form_mutual_information(&p, 20.0).unwrap();
    c.check(
        "closed form at deta = 20, delta = 1",
        far.value <= 1e-3,
        format!("{:.4e} <= 1e-3", far.value),
    );

    let closed0 = at_rest.mutual.closed.unwrap();
    c.check(
        "deta = 0 discrepancy flagged",
        at_rest.mutual.discrepancy_flag && closed0.zero_acceleration_conflict,
        format!(
            "closed form {} vs stated {}; flags set",
            closed0.value,
            entanglement::STATED_ZERO_ACCELERATION_MI
        ),
    );
}

fn criterion_7(c: &mut Criterion) {
    let n_max = 128;
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 * 0.25).collect();
    let reports: Vec<_> = grid
        .iter()
        .map(|&r| entanglement::scalar_pair_report(r, n_max).unwrap())
        .collect();
    let d0 = (reports[0].mutual.exact - 2.0).abs();
    c.check("I at r = 0", d0 <= 1e-10, format!("|I - 2| = {d0:e} <= 1e-10"));
    let monotone = reports.windows(2).all(|w| w[1].mutual.exact <= w[0].mutual.exact);
    let values: Vec<String> = reports.iter().map(|r| format!("{:.5}", r.mutual.exact)).collect();
    c.check("monotone nonincreasing, n_max = 128", monotone, values.join(" "));
    let last128 = reports.last().unwrap();
    c.note(format!(
        "r = 2.5 at n_max = 128: I = {:.6}, deficit {:.3e} (cutoff too small for the deficit bound)",
        last128.mutual.exact, last128.deficit
    ));

    let end = entanglement::scalar_pair_report(2.5, 256).unwrap();
    c.check(
        "r = 2.5 endpoint, n_max = 256",
        (1.0..=1.4).contains(&end.mutual.exact) && end.deficit < 1e-2,
        format!(
            "I = {:.6} in [1.0, 1.4], deficit {:.3e} < 1e-2",
            end.mutual.exact, end.deficit
        ),
    );
}

fn criterion_8(c: &mut Criterion) {
    let p = wigner::kinematics(1.0, 1.0).unwrap();
    let id = ComplexMatrix::identity(2);
    let d = wigner::wigner_matrix(&p, 0.0).unwrap().matrix().max_abs_diff(&id);
    let o = wigner::little_group_oracle(&p, 0.0).unwrap().matrix().max_abs_diff(&id);
    c.check(
        "closed form and oracle are I at deta = 0",
        d <= 1e-14 && o <= 1e-14,
        format!("{d:e}, {o:e} <= 1e-14"),
    );

    let mut worst = 0.0f64;
    for &(m, delta, deta) in &[(1.0, 1.0, 1e-3), (1.0, 0.0, 0.5), (2.0, 2.5, 1.0), (0.5, 0.3, 3.0)] {
        let p = wigner::kinematics(m, delta).unwrap();
        for displaced in [DisplacedMomentum::Transformed, DisplacedMomentum::Comoving] {
            worst = worst.max(
                wigner::little_group_oracle_with(&p, deta, displaced)
                    .unwrap()
                    .off_axis_weight(),
            );
        }
    }
    c.check(
        "collinear oracle has no rotation part",
        worst <= 1e-10,
        format!("max sigma2/sigma3 weight {worst:e} <= 1e-10"),
    );

    let cmp = wigner::compare_with_oracle(&p, 1e-3, DisplacedMomentum::Transformed).unwrap();
    c.note("entrywise gap, (m, delta, deta) = (1, 1, 1e-3):");
    for i in 0..2 {
        c.note(format!(
            "  closed[{i}] = ({:+.12}, {:+.12})  oracle[{i}] = ({:+.12}, {:+.12})  |gap| = ({:.3e}, {:.3e})",
            cmp.closed_form.entry(i, 0).re,
            cmp.closed_form.entry(i, 1).re,
            cmp.oracle.entry(i, 0).re,
            cmp.oracle.entry(i, 1).re,
            cmp.gap[(i, 0)].norm(),
            cmp.gap[(i, 1)].norm(),
        ));
    }
    c.check(
        "gap table emitted",
        cmp.max_gap.is_finite(),
        format!("max gap {:.3e}", cmp.max_gap),
    );
}

fn criterion_9(c: &mut Criterion) {
    let points = [(0.0, 1.0), (0.7, 0.1), (-1.3, 10.0), (2.0, 3.0)];
    let mut antisym = 0.0f64;
    let mut torsion = 0.0f64;
    for &(eta, xi) in &points {
        let pt = RindlerPoint::new(eta, xi).unwrap();
        let form = frame::connection_one_form(&pt, [0.2, -0.4, 0.1, 0.3]).unwrap();
        antisym = antisym.max(form.antisymmetry_defect());
        torsion = torsion.max(frame::torsion_residual(&pt, frame::FD_STEP).unwrap());
    }
    c.check(
        "connection antisymmetry",
        antisym == 0.0,
        format!("max defect {antisym:e} (exact)"),
    );
    c.check(
        "torsion-free",
        torsion <= 1e-8,
        format!("max residual {torsion:.3e} <= 1e-8 (step 1e-6)"),
    );

    let mut worst = 0.0f64;
    for deta in [1e-3, 1e-2] {
        let pt = RindlerPoint::new(0.0, 1.0).unwrap();
        let form = frame::connection_one_form(&pt, [deta, 0.0, 0.0, 0.0]).unwrap();
        worst = worst.max((form.upper[0][1].abs() - deta).abs());
    }
    c.check(
        "|d omega^0_1| = deta",
        worst <= 1e-12,
        format!("max deviation {worst:e} <= 1e-12"),
    );
    let conv = frame::connection_convention();
    c.note(format!(
        "sign: omega^0_1 = {:+} d eta, omega_01 = {:+} d eta (quoted {:+})",
        conv.upper_01, conv.lowered_01, conv.quoted
    ));

    let mut hyper = 0.0f64;
    for i in 0..=60 {
        let eta = -3.0 + 0.1 * i as f64;
        let e = frame::rindler_to_minkowski(eta, 0.0, 1.0).unwrap();
        hyper = hyper.max((e.x * e.x - e.t * e.t - 1.0).abs());
    }
    c.check(
        "x^2 - t^2 constant over eta in [-3, 3]",
        hyper <= 1e-12,
        format!("max deviation {hyper:e} <= 1e-12"),
    );
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_unruh"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_10(c: &mut Criterion) {
    let table = ["table1", "--n-max", "64", "--r", "0:2:0.5", "--deta", "0:20:5"];
    let (c1, a) = run_cli(&table);
    let (c2, b) = run_cli(&table);
    c.check(
        "table1 byte-identical",
        c1 == 0 && c2 == 0 && a == b && !a.is_empty(),
        format!("{} bytes, exit {c1}", a.len()),
    );
    let mut jsonl = table.to_vec();
    jsonl.extend(["--format", "jsonl"]);
    let (c1, a) = run_cli(&jsonl);
    let (c2, b) = run_cli(&jsonl);
    c.check(
        "table1 json byte-identical",
        c1 == 0 && c2 == 0 && a == b && !a.is_empty(),
        format!("{} bytes", a.len()),
    );

    let sweep = ["entanglement", "--delta", "1", "--deta", "0:5:0.25"];
    let (c1, a) = run_cli(&sweep);
    let (c2, b) = run_cli(&sweep);
    c.check(
        "entanglement sweep byte-identical",
        c1 == 0 && c2 == 0 && a == b,
        format!("{} bytes", a.len()),
    );

    let text = String::from_utf8(a).unwrap();
    let parsed = RecordSet::parse_csv(&text).unwrap();
    let mut again = Vec::new();
    parsed.write_csv(&mut again).unwrap();
    let settings = Settings::new(
        [("delta", "1"), ("deta", "0:5:0.25")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
        Default::default(),
    );
    let direct = commands::entanglement_sweep(&settings).unwrap();
    c.check(
        "CSV round trip",
        again == text.as_bytes() && parsed == direct,
        format!("{} rows, parse(emit(records)) == records", parsed.rows.len()),
    );
}

fn module_examples(c: &mut Criterion) {
    let p = wigner::kinematics(1.0, 1.0).unwrap();
    let values: Vec<f64> = (0..=20)
        .map(|i| {
            entanglement::closed_form_mutual_information(&p, 0.5 * i as f64)
                .unwrap()
                .value
        })
        .collect();
    let monotone = values.windows(2).all(|w| w[1] <= w[0]);
    let (imin, vmin) = values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
    c.known(
        "mutual-information closed form nonincreasing on deta in {0, 0.5, ..., 10}",
        monotone,
        format!("minimum {vmin:.4} at deta = {}, then rises toward 0", 0.5 * imin as f64),
    );
}

fn main() {
    let mut suite = Suite::default();
    let s = Duration::from_secs;
    suite.run(1, "CAR/CCR battery", s(1), criterion_1);
    suite.run(2, "vacuum annihilation", s(1), criterion_2);
    suite.run(3, "thermal occupation", s(1), criterion_3);
    suite.run(4, "excited-state separability", s(1), criterion_4);
    suite.run(5, "negativity endpoints", s(2), criterion_5);
    suite.run(6, "mutual information endpoints", s(2), criterion_6);
    suite.run(7, "scalar mutual information", s(30), criterion_7);
    suite.run(8, "Wigner identity and oracle", s(1), criterion_8);
    suite.run(9, "frame geometry", s(1), criterion_9);
    suite.run(10, "CLI determinism", s(5), criterion_10);
    suite.run(0, "module examples outside the criteria", s(1), module_examples);
    if suite.unexpected > 0 {
        println!("{} criterion/criteria failed unexpectedly", suite.unexpected);
        std::process::exit(1);
    }
    println!("acceptance: all criteria pass except documented known failures");
}
