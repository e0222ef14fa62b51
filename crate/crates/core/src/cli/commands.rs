//! Scenario runners behind each subcommand.

use std::fmt::Write as _;

use rayon::prelude::*;

use super::config::{check_single_sweep, Settings, UsageError};
use super::record::{format_float, Record, RecordSet, Value};
use crate::entanglement::{self, ScalarPairReport};
use crate::fock;
use crate::frame;
use crate::numerics::ComplexMatrix;
use crate::rindler::{self, UnruhParams};
use crate::wigner::{self, DisplacedMomentum, MomentumState};
use crate::Result;

/// Squeezing at which the state-structure rows of the table are evaluated.
pub const STRUCTURE_SQUEEZING: f64 = 1.0;
/// Schmidt coefficients at or below this count as zero.
pub const SCHMIDT_THRESHOLD: f64 = 1e-8;
pub const CONVERGENCE_STEPS: [usize; 3] = [1, 10, 100];

/// Evaluates `f` on every point concurrently, keeping grid order.
fn sweep<T, F>(points: &[T], f: F) -> Vec<(Record, Option<String>)>
where
    T: Sync,
    F: Fn(&T, &mut Record) -> Result<()> + Sync,
{
    points
        .par_iter()
        .map(|p| {
            let mut rec = Record::new();
            let err = f(p, &mut rec).err().map(|e| e.to_string());
            (rec, err)
        })
        .collect()
}

fn collect(columns: &[&str], rows: Vec<(Record, Option<String>)>) -> RecordSet {
    let mut set = RecordSet::new(columns);
    for (rec, err) in rows {
        set.add(rec, err);
    }
    set
}

const OCCUPATION_COLUMNS: [&str; 5] = ["omega", "closed", "matrix", "gap", "convention"];

pub fn occupation(s: &Settings) -> std::result::Result<RecordSet, UsageError> {
    let omega = s.grid("omega", "0:5:0.25")?;
    let rows = sweep(&omega.points(), |&w, rec| {
        rec.f64("omega", w);
        let occ = rindler::occupation_i(&UnruhParams::from_omega(w)?)?;
        rec.f64("closed", occ.closed_form)
            .f64("matrix", occ.matrix_expectation)
            .f64("gap", occ.gap)
            .push("convention", Value::text(occ.convention.as_str()));
        Ok(())
    });
    Ok(collect(&OCCUPATION_COLUMNS, rows))
}

const ENTANGLEMENT_COLUMNS: [&str; 27] = [
    "m",
    "delta",
    "deta",
    "a",
    "b",
    "frame_rapidity",
    "connection_lowered_01",
    "unitarity_defect",
    "pre_norm",
    "lambda_min",
    "en_exact",
    "en_unnormalized",
    "en_closed",
    "en_gap",
    "en_rel_gap",
    "en_gap_unnormalized",
    "mi_exact",
    "mi_closed",
    "mi_term1",
    "mi_term2",
    "mi_term3",
    "mi_discrepancy",
    "mi_flag",
    "mi_closed_negative",
    "mi_zero_acceleration_conflict",
    "s_alice",
    "s_rob",
];

pub fn entanglement_sweep(s: &Settings) -> std::result::Result<RecordSet, UsageError> {
    let m = s.number("m", 1.0)?;
    let delta = s.grid("delta", "1")?;
    let deta = s.grid("deta", "0:20:0.5")?;
    check_single_sweep(&[("delta", &delta), ("deta", &deta)])?;
    let points: Vec<(f64, f64)> = delta
        .points()
        .into_iter()
        .flat_map(|d| deta.points().into_iter().map(move |e| (d, e)))
        .collect();
    let lowered = frame::connection_convention().lowered_01;
    let rows = sweep(&points, |&(d, e), rec| {
        rec.f64("m", m).f64("delta", d).f64("deta", e);
        let p = wigner::kinematics(m, d)?;
        let rep = entanglement::spin_pair_report(&p, e)?;
        let closed = rep.mutual.closed.expect("closed form attached");
        let en_closed = rep.negativity.closed.expect("closed form attached");
        rec.f64("a", rep.coefficients.a)
            .f64("b", rep.coefficients.b)
            .f64("frame_rapidity", wigner::frame_rapidity(e)?)
            .f64("connection_lowered_01", lowered)
            .f64("unitarity_defect", rep.unitarity_defect)
            .f64("pre_norm", rep.pre_norm)
            .f64("lambda_min", rep.negativity.lambda_min)
            .f64("en_exact", rep.negativity.exact)
            .f64("en_unnormalized", rep.negativity_unnormalized)
            .f64("en_closed", en_closed)
            .push("en_gap", Value::opt(rep.negativity.abs_gap))
            .push("en_rel_gap", Value::opt(rep.negativity.rel_gap))
            .f64("en_gap_unnormalized", (rep.negativity_unnormalized - en_closed).abs())
            .f64("mi_exact", rep.mutual.exact)
            .f64("mi_closed", closed.value)
            .f64("mi_term1", closed.terms[0])
            .f64("mi_term2", closed.terms[1])
            .f64("mi_term3", closed.terms[2])
            .push("mi_discrepancy", Value::opt(rep.mutual.discrepancy))
            .push("mi_flag", Value::Bool(rep.mutual.discrepancy_flag))
            .push("mi_closed_negative", Value::Bool(closed.negative))
            .push(
                "mi_zero_acceleration_conflict",
                Value::Bool(closed.zero_acceleration_conflict),
            )
            .f64("s_alice", rep.mutual.s_a)
            .f64("s_rob", rep.mutual.s_r);
        Ok(())
    });
    Ok(collect(&ENTANGLEMENT_COLUMNS, rows))
}

fn push_matrix(rec: &mut Record, prefix: &str, m: &ComplexMatrix) {
    for i in 0..2 {
        for j in 0..2 {
            rec.f64(&format!("{prefix}_{i}{j}_re"), m[(i, j)].re);
            rec.f64(&format!("{prefix}_{i}{j}_im"), m[(i, j)].im);
        }
    }
}

fn matrix_columns(prefix: &str) -> Vec<String> {
    let mut out = Vec::with_capacity(8);
    for i in 0..2 {
        for j in 0..2 {
            out.push(format!("{prefix}_{i}{j}_re"));
            out.push(format!("{prefix}_{i}{j}_im"));
        }
    }
    out
}

pub fn wigner_columns() -> Vec<String> {
    let mut cols: Vec<String> = ["m", "delta", "deta", "eta_total", "steps"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    cols.extend(matrix_columns("closed"));
    cols.extend(matrix_columns("oracle"));
    for i in 0..2 {
        for j in 0..2 {
            cols.push(format!("gap_{i}{j}"));
        }
    }
    cols.extend(
        [
            "gap_max",
            "closed_unitarity_defect",
            "oracle_unitarity_defect",
            "oracle_off_axis",
            "closed_off_axis",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    cols.extend(matrix_columns("comoving"));
    cols.push("comoving_gap_max".into());
    cols.extend(matrix_columns("accumulated"));
    cols.push("accumulated_unitarity_defect".into());
    for n in CONVERGENCE_STEPS {
        cols.extend(matrix_columns(&format!("steps{n}")));
        cols.push(format!("steps{n}_change"));
    }
    cols
}

pub fn wigner(s: &Settings) -> std::result::Result<RecordSet, UsageError> {
    let m = s.number("m", 1.0)?;
    let delta = s.grid("delta", "1")?;
    let deta = s.grid("deta", "1e-3")?;
    check_single_sweep(&[("delta", &delta), ("deta", &deta)])?;
    let steps = s.count("steps", 100)?;
    if steps == 0 {
        return Err(UsageError("--steps must be >= 1".into()));
    }
    let eta_total = match s.raw("eta_total") {
        Some(_) => Some(s.number("eta_total", 0.0)?),
        None => None,
    };
    let points: Vec<(f64, f64)> = delta
        .points()
        .into_iter()
        .flat_map(|d| deta.points().into_iter().map(move |e| (d, e)))
        .collect();
    let rows = sweep(&points, |&(d, e), rec| {
        let total = eta_total.unwrap_or(e);
        rec.f64("m", m).f64("delta", d).f64("deta", e).f64("eta_total", total);
        rec.push("steps", Value::Int(steps as i64));
        let p: MomentumState = wigner::kinematics(m, d)?;
        let cmp = wigner::compare_with_oracle(&p, e, DisplacedMomentum::Transformed)?;
        push_matrix(rec, "closed", cmp.closed_form.matrix());
        push_matrix(rec, "oracle", cmp.oracle.matrix());
        for i in 0..2 {
            for j in 0..2 {
                rec.f64(&format!("gap_{i}{j}"), cmp.gap[(i, j)].norm());
            }
        }
        rec.f64("gap_max", cmp.max_gap)
            .f64("closed_unitarity_defect", cmp.closed_form.unitarity_defect())
            .f64("oracle_unitarity_defect", cmp.oracle.unitarity_defect())
            .f64("oracle_off_axis", cmp.oracle.off_axis_weight())
            .f64("closed_off_axis", cmp.closed_form.off_axis_weight());
        let comoving = wigner::compare_with_oracle(&p, e, DisplacedMomentum::Comoving)?;
        push_matrix(rec, "comoving", comoving.oracle.matrix());
        rec.f64("comoving_gap_max", comoving.max_gap);
        let acc = wigner::accumulate(&p, total, steps)?;
        push_matrix(rec, "accumulated", acc.matrix());
        rec.f64("accumulated_unitarity_defect", acc.unitarity_defect());
        for (n, mat, change) in wigner::accumulation_convergence(&p, total, &CONVERGENCE_STEPS)? {
            push_matrix(rec, &format!("steps{n}"), mat.matrix());
            rec.push(format!("steps{n}_change"), Value::opt(change));
        }
        Ok(())
    });
    let cols = wigner_columns();
    let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
    Ok(collect(&cols, rows))
}

pub const COMPARISON_COLUMNS: [&str; 8] = [
    "row",
    "parameter",
    "value",
    "scalar",
    "fermion",
    "fermion_closed",
    "deficit",
    "note",
];

pub const SCALAR_CAUSE: &str = "thermal mixing between wedges: region II is traced out";
pub const FERMION_CAUSE: &str = "Wigner rotation of the spin under acceleration";

/// Table rows plus a fixed-width text rendering of the same content.
pub struct Comparison {
    pub records: RecordSet,
    pub text: String,
}

struct Structure {
    vacuum_scalar: f64,
    vacuum_fermion: f64,
    vacuum_deficit: f64,
    excited_scalar_rank: usize,
    excited_fermion_rank: usize,
    excited_scalar_largest: f64,
    excited_fermion_largest: f64,
    excited_deficit: f64,
}

fn structure(n_max: usize) -> Result<Structure> {
    let params = UnruhParams::from_squeezing(STRUCTURE_SQUEEZING)?;
    let sv = rindler::scalar_unruh_vacuum(&params, n_max)?;
    let se = rindler::scalar_excited(&params, n_max, 1)?;
    let fv = rindler::fermion_unruh_vacuum(&params)?;
    let fe = rindler::fermion_excited(&params)?;
    let (svs, ses) = (rindler::wedge_schmidt(&sv)?, rindler::wedge_schmidt(&se)?);
    let (fvs, fes) = (rindler::wedge_schmidt(&fv)?, rindler::wedge_schmidt(&fe)?);
    let second = |c: &[f64]| c.get(1).copied().unwrap_or(0.0);
    Ok(Structure {
        vacuum_scalar: second(&svs),
        vacuum_fermion: second(&fvs),
        vacuum_deficit: sv.truncation_deficit,
        excited_scalar_rank: fock::schmidt_rank(&ses, SCHMIDT_THRESHOLD),
        excited_fermion_rank: fock::schmidt_rank(&fes, SCHMIDT_THRESHOLD),
        excited_scalar_largest: ses[0],
        excited_fermion_largest: fes[0],
        excited_deficit: se.truncation_deficit,
    })
}

pub fn comparison(s: &Settings) -> std::result::Result<Comparison, UsageError> {
    let n_max = s.count("n_max", 128)?;
    let r = s.grid("r", "0:2.5:0.25")?;
    let deta = s.grid("deta", "0:20:2")?;
    let delta = s.number("delta", 1.0)?;
    let m = s.number("m", 1.0)?;

    let mut set = RecordSet::new(&COMPARISON_COLUMNS);
    let omega_s = UnruhParams::from_squeezing(STRUCTURE_SQUEEZING)
        .map(|p| p.omega())
        .unwrap_or(f64::NAN);

    let base = |row: &str, param: &str, value: f64| {
        let mut rec = Record::new();
        rec.push("row", Value::text(row))
            .push("parameter", Value::text(param))
            .f64("value", value);
        rec
    };

    match structure(n_max) {
        Ok(st) => {
            let mut rec = base("vacuum_second_schmidt", "r", STRUCTURE_SQUEEZING);
            rec.f64("scalar", st.vacuum_scalar)
                .f64("fermion", st.vacuum_fermion)
                .f64("deficit", st.vacuum_deficit);
            let both = st.vacuum_scalar > SCHMIDT_THRESHOLD && st.vacuum_fermion > SCHMIDT_THRESHOLD;
            rec.push(
                "note",
                Value::text(if both { "entangled for both" } else { "not entangled" }),
            );
            set.add(rec, None);

            let mut rec = base("excited_schmidt_rank", "r", STRUCTURE_SQUEEZING);
            rec.push("scalar", Value::Int(st.excited_scalar_rank as i64))
                .push("fermion", Value::Int(st.excited_fermion_rank as i64))
                .f64("deficit", st.excited_deficit)
                .push("note", Value::text("scalar entangled; fermion product state"));
            set.add(rec, None);

            let mut rec = base("excited_largest_schmidt", "r", STRUCTURE_SQUEEZING);
            rec.f64("scalar", st.excited_scalar_largest)
                .f64("fermion", st.excited_fermion_largest)
                .f64("deficit", st.excited_deficit)
                .push(
                    "note",
                    Value::text(format!("fermion evaluated at omega = {}", format_float(omega_s))),
                );
            set.add(rec, None);
        }
        Err(e) => set.add(base("state_structure", "r", STRUCTURE_SQUEEZING), Some(e.to_string())),
    }

    let scalar_rows: Vec<(f64, Result<ScalarPairReport>)> = r
        .points()
        .par_iter()
        .map(|&x| (x, entanglement::scalar_pair_report(x, n_max)))
        .collect();
    for (x, rep) in &scalar_rows {
        let mut rec = base("scalar_mutual_information", "r", *x);
        match rep {
            Ok(rep) => {
                rec.f64("scalar", rep.mutual.exact).f64("deficit", rep.deficit);
                rec.push("note", Value::text(rep.warning.clone().unwrap_or_default()));
                set.add(rec, None);
            }
            Err(e) => set.add(rec, Some(e.to_string())),
        }
    }

    let fermion_rows: Vec<(f64, Result<entanglement::SpinPairReport>)> = deta
        .points()
        .par_iter()
        .map(|&e| {
            (
                e,
                wigner::kinematics(m, delta).and_then(|p| entanglement::spin_pair_report(&p, e)),
            )
        })
        .collect();
    for (e, rep) in &fermion_rows {
        let mut rec = base("fermion_mutual_information", "deta", *e);
        match rep {
            Ok(rep) => {
                let closed = rep.mutual.closed.expect("closed form attached");
                rec.f64("fermion", rep.mutual.exact).f64("fermion_closed", closed.value);
                let mut notes = Vec::new();
                if closed.zero_acceleration_conflict {
                    notes.push("closed form at zero acceleration differs from 2");
                }
                if closed.negative {
                    notes.push("closed form negative");
                }
                rec.push("note", Value::text(notes.join("; ")));
                set.add(rec, None);
            }
            Err(err) => set.add(rec, Some(err.to_string())),
        }
    }

    let first_scalar = scalar_rows
        .first()
        .and_then(|(x, r)| r.as_ref().ok().map(|r| (*x, r.mutual.exact, r.deficit)));
    let last_scalar = scalar_rows
        .last()
        .and_then(|(x, r)| r.as_ref().ok().map(|r| (*x, r.mutual.exact, r.deficit)));
    let first_fermion = fermion_rows
        .first()
        .and_then(|(e, r)| r.as_ref().ok().map(|r| (*e, r.mutual.exact)));
    let last_fermion = fermion_rows.last().and_then(|(e, r)| {
        r.as_ref()
            .ok()
            .map(|r| (*e, r.mutual.closed.expect("closed form attached").value))
    });

    let mut rec = base("mi_zero_acceleration", "r|deta", f64::NAN);
    rec.push("scalar", Value::opt(first_scalar.map(|t| t.1)))
        .push("fermion", Value::opt(first_fermion.map(|t| t.1)))
        .push("deficit", Value::opt(first_scalar.map(|t| t.2)))
        .push("note", Value::text("exact; expected 2 for both"));
    set.add(rec, None);

    let mut rec = base("mi_large_acceleration", "r|deta", f64::NAN);
    rec.push("scalar", Value::opt(last_scalar.map(|t| t.1)))
        .push("fermion_closed", Value::opt(last_fermion.map(|t| t.1)))
        .push("deficit", Value::opt(last_scalar.map(|t| t.2)))
        .push(
            "note",
            Value::text(format!(
                "scalar at r = {} trends to 1 (truncated Fock space); fermion closed form at deta = {} tends to 0",
                last_scalar.map_or("nan".into(), |t| format_float(t.0)),
                last_fermion.map_or("nan".into(), |t| format_float(t.0)),
            )),
        );
    set.add(rec, None);

    let mut rec = base("cause_of_loss", "", f64::NAN);
    rec.push("scalar", Value::text(SCALAR_CAUSE))
        .push("fermion", Value::text(FERMION_CAUSE));
    set.add(rec, None);

    let text = render_comparison(&set, n_max, delta, m);
    Ok(Comparison { records: set, text })
}

fn cell(v: Option<&Value>) -> String {
    match v {
        Some(Value::F64(x)) => format!("{x:.6}"),
        Some(Value::Missing) | None => "-".into(),
        Some(v) => v.render(),
    }
}

fn render_comparison(set: &RecordSet, n_max: usize, delta: f64, m: f64) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "Entanglement under acceleration: scalar vs fermion");
    let _ = writeln!(
        w,
        "scalar: Fock cutoff n_max = {n_max}; fermion: m = {m}, delta = {delta}"
    );
    let _ = writeln!(w);
    let _ = writeln!(w, "{:<34} {:>14} {:>14}", "", "scalar", "fermion");
    for row in &set.rows {
        let name = cell(row.get("row"));
        let label = match name.as_str() {
            "vacuum_second_schmidt" => format!("vacuum 2nd Schmidt coeff (r = {})", STRUCTURE_SQUEEZING),
            "excited_schmidt_rank" => "excited-state Schmidt rank".into(),
            "excited_largest_schmidt" => "excited-state largest Schmidt".into(),
            "mi_zero_acceleration" => "mutual information, zero accel.".into(),
            "mi_large_acceleration" => "mutual information, large accel.".into(),
            _ => continue,
        };
        let fermion = match row.get("fermion") {
            Some(Value::Missing) | None => cell(row.get("fermion_closed")),
            v => cell(v),
        };
        let _ = writeln!(w, "{:<34} {:>14} {:>14}", label, cell(row.get("scalar")), fermion);
        let note = cell(row.get("note"));
        if note != "-" && !note.is_empty() {
            let _ = writeln!(w, "    {note}");
        }
    }
    let _ = writeln!(w);
    let _ = writeln!(w, "scalar mutual information vs squeezing r");
    let _ = writeln!(w, "{:>10} {:>12} {:>12}  note", "r", "I", "deficit");
    for row in set
        .rows
        .iter()
        .filter(|r| matches!(r.get("row"), Some(Value::Str(s)) if s == "scalar_mutual_information"))
    {
        let _ = writeln!(
            w,
            "{:>10} {:>12} {:>12}  {}",
            cell(row.get("value")),
            cell(row.get("scalar")),
            row.get("deficit")
                .and_then(Value::as_f64)
                .map_or("-".into(), |d| format!("{d:.3e}")),
            if row.is_error() {
                cell(row.get("error"))
            } else {
                cell(row.get("note"))
            }
        );
    }
    let _ = writeln!(w);
    let _ = writeln!(w, "fermion spin-pair mutual information vs deta");
    let _ = writeln!(w, "{:>10} {:>12} {:>12}  note", "deta", "exact", "closed");
    for row in set
        .rows
        .iter()
        .filter(|r| matches!(r.get("row"), Some(Value::Str(s)) if s == "fermion_mutual_information"))
    {
        let _ = writeln!(
            w,
            "{:>10} {:>12} {:>12}  {}",
            cell(row.get("value")),
            cell(row.get("fermion")),
            cell(row.get("fermion_closed")),
            if row.is_error() {
                cell(row.get("error"))
            } else {
                cell(row.get("note"))
            }
        );
    }
    let _ = writeln!(w);
    let _ = writeln!(w, "cause of entanglement loss");
    let _ = writeln!(w, "  scalar:  {SCALAR_CAUSE}");
    let _ = writeln!(w, "  fermion: {FERMION_CAUSE}");
    out
}
