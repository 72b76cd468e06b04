//! Task execution.

use qdr_core::chern_weil::{bianchi_check, chern_character, closed_char_form, quantum_curvature, CharPoly, MatrixForm};
use qdr_core::cohomology::{build_complex, quantum_integral, ComplexModel};
use qdr_core::cpn::{cpn_structure_constants, CPnRing, MAX_N};
use qdr_core::function::FourierFn;
use qdr_core::laurent::Mode;
use qdr_core::poisson::{exterior_d, field_wedge, koszul_delta, quantum_d, FieldForm, PoissonField};
use qdr_core::suites::{self, SuiteOptions, SUITES};
use qdr_core::symplectic::{
    apply_a, apply_ah, apply_k, apply_l, apply_lh, apply_lhstar, apply_lstar, lefschetz_matrix, symplectic_star, Parity,
};
use qdr_core::{Error as CoreError, Laurent, QForm, Ring, SymplecticForm};
use thiserror::Error;

use crate::expr::{self, Coefficient, ExprError};
use crate::model::{Field, Model};
use crate::report::{LedgerEntry, TaskReport, TermEntry, Value};
use crate::scenario::{Scenario, Task};

/// Failures that abort the run with a usage error.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("task {index} ({kind}): {msg}")]
    Task { index: usize, kind: String, msg: String },
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub const OPERATORS: &[&str] = &["d", "delta", "dh", "L", "Lstar", "A", "K", "Lh", "Ah", "Lhstar", "star"];

pub struct RunOptions {
    pub seed: u64,
    pub samples: Option<usize>,
    pub n: Option<usize>,
}

struct Ctx<'a, C> {
    dim: usize,
    w: &'a PoissonField<C>,
    omega: Option<&'a SymplecticForm>,
    /// Fourier truncation, on tori.
    truncation: Option<i32>,
}

type TaskResult = Result<TaskReport, String>;

fn need<'t, T>(v: &'t Option<T>, field: &str) -> Result<&'t T, String> {
    v.as_ref().ok_or_else(|| format!("missing field `{field}`"))
}

fn expr_err(e: ExprError) -> String {
    e.to_string()
}

impl<C: Coefficient> Ctx<'_, C> {
    fn form(&self, s: &Scenario, src: &str) -> Result<FieldForm<C>, String> {
        let text = s.expand(src)?;
        let e = expr::parse(&text).map_err(expr_err)?;
        if let Some(t) = self.truncation {
            let m = expr::max_mode(&e);
            if m > t {
                return Err(format!("mode {m} lies outside the truncation {t}"));
            }
        }
        expr::eval(&e, self.dim, self.w).map_err(expr_err)
    }

    fn omega(&self, op: &str) -> Result<&SymplecticForm, String> {
        self.omega.ok_or_else(|| format!("operator {op} needs a constant symplectic form"))
    }

    fn to_q(&self, f: &FieldForm<C>, op: &str) -> Result<QForm, String> {
        let mut out = QForm::zero(self.dim);
        for (b, l) in f.terms() {
            let mut c = Laurent::zero();
            for (e, x) in l.terms() {
                let q = x.as_rational().ok_or_else(|| format!("operator {op} needs constant coefficients"))?;
                c.add_term(e, &q);
            }
            out.add_term(b, &c);
        }
        Ok(out)
    }

    fn from_q(&self, f: &QForm) -> FieldForm<C> {
        f.map(|l| l.map(|q| C::from_q(q)))
    }

    fn operator(&self, op: &str, a: &FieldForm<C>) -> Result<FieldForm<C>, String> {
        let core = |e: CoreError| format!("{op}: {e}");
        let sym = |f: fn(&QForm, &SymplecticForm) -> qdr_core::Result<QForm>| -> Result<FieldForm<C>, String> {
            let q = self.to_q(a, op)?;
            Ok(self.from_q(&f(&q, self.omega(op)?).map_err(core)?))
        };
        match op {
            "d" => Ok(exterior_d(a)),
            "delta" => koszul_delta(a, self.w).map_err(core),
            "dh" => quantum_d(a, self.w).map_err(core),
            "L" => sym(apply_l),
            "Lstar" => sym(apply_lstar),
            "A" => sym(apply_a),
            "K" => {
                let q = self.to_q(a, op)?;
                Ok(self.from_q(&apply_k(&q).map_err(core)?))
            }
            "Lh" => sym(apply_lh),
            "Ah" => sym(apply_ah),
            "Lhstar" => sym(|a, o| apply_lhstar(a, o, Mode::Laurent)),
            "star" => sym(symplectic_star),
            other => Err(format!("unknown operator {other:?}; available: {}", OPERATORS.join(", "))),
        }
    }

    fn run(&self, s: &Scenario, t: &Task, index: usize) -> TaskResult {
        let mut r = TaskReport::new(index, &t.kind);
        match t.kind.as_str() {
            "product" => {
                let f = self.form(s, need(&t.expr, "expr")?)?;
                r.value("result", Value::form(&f));
            }
            "power" => {
                let a = self.form(s, need(&t.expr, "expr")?)?;
                let k = *need(&t.exponent, "exponent")?;
                let mut acc = FieldForm::<C>::one(self.dim);
                for _ in 0..k {
                    acc = field_wedge(&acc, &a, self.w).map_err(|e| e.to_string())?;
                }
                r.value("result", Value::form(&acc));
            }
            "operator" => {
                let op = need(&t.operator, "operator")?;
                let a = self.form(s, need(&t.expr, "expr")?)?;
                r.value("result", Value::form(&self.operator(op, &a)?));
            }
            "chern" => self.chern(s, t, &mut r)?,
            _ => return Err(unknown_kind(&t.kind)),
        }
        Ok(r)
    }

    fn chern(&self, s: &Scenario, t: &Task, r: &mut TaskReport) -> Result<(), String> {
        let rows = need(&t.connection, "connection")?;
        let theta = rows
            .iter()
            .map(|row| row.iter().map(|e| self.form(s, e)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let theta = MatrixForm::from_rows(theta).map_err(|e| e.to_string())?;
        if !theta.is_connection() {
            return Err("connection entries must be h-free 1-forms".into());
        }
        let curv = quantum_curvature(&theta, self.w).map_err(|e| e.to_string())?;
        for i in 0..curv.rank() {
            for j in 0..curv.rank() {
                r.value(format!("Theta[{}][{}]", i + 1, j + 1), Value::form(curv.get(i, j)));
            }
        }
        r.check("Bianchi identity", bianchi_check(&theta, self.w).map_err(|e| e.to_string())?, "");
        let (tr, closed) = closed_char_form(&theta, CharPoly::Trace, self.w).map_err(|e| e.to_string())?;
        r.value("tr Theta", Value::form(&tr));
        r.check("tr Theta is d_h-closed", closed, "");
        if theta.rank() == 1 {
            let n = t.n.unwrap_or(self.dim / 2) as i64;
            let ch = chern_character(&theta, self.w, n).map_err(|e| e.to_string())?;
            r.value("ch", Value::form(&ch));
            let closed = quantum_d(&ch, self.w).map_err(|e| e.to_string())?.is_zero();
            r.check("ch is d_h-closed", closed, "");
        }
        Ok(())
    }
}

impl Ctx<'_, FourierFn> {
    fn torus(&self, s: &Scenario, t: &Task, index: usize) -> TaskResult {
        let mut r = TaskReport::new(index, &t.kind);
        let omega = self.omega(&t.kind)?;
        let a = self.form(s, need(&t.expr, "expr")?)?;
        let int = |f: &FieldForm<FourierFn>| quantum_integral(f, omega).map_err(|e| e.to_string());
        if t.kind == "integral" {
            r.value("integral", Value::hpoly(&int(&a)?));
        } else {
            let hd = koszul_delta(&a, self.w).map_err(|e| e.to_string())?.map(|c| c.shift(1));
            let dh = quantum_d(&a, self.w).map_err(|e| e.to_string())?;
            for (name, f) in [("int d a", exterior_d(&a)), ("int h delta a", hd), ("int d_h a", dh)] {
                let v = int(&f)?;
                r.check(format!("{name} = 0"), v.is_zero(), v.to_string());
            }
        }
        Ok(r)
    }
}

fn unknown_kind(kind: &str) -> String {
    format!(
        "unknown task kind {kind:?}; expected product, power, operator, spectrum, cohomology, integral, stokes, chern, cpn_table or a suite ({})",
        suites::available()
    )
}

fn parity(t: &Task) -> Result<Parity, String> {
    match t.parity.as_deref() {
        None | Some("even") => Ok(Parity::Even),
        Some("odd") => Ok(Parity::Odd),
        Some(p) => Err(format!("parity must be even or odd, not {p:?}")),
    }
}

fn cpn_values(ring: &CPnRing, r: &mut TaskReport) {
    let n = ring.n();
    for k in 0..=n {
        for l in k..=n {
            let e = ring.entry(k, l);
            let terms = e
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| TermEntry { basis: format!("w^{j}"), coeffs: c.terms().map(|(p, q)| (p, q.to_string())).collect() })
                .collect();
            r.value(format!("w^{k} * w^{l}"), Value::Form { text: CPnRing::display_elem(e), terms });
        }
    }
}

fn suite_options(model: &Model, t: &Task, o: &RunOptions) -> SuiteOptions {
    SuiteOptions {
        dim: Some(model.dim),
        n: t.n.or(o.n).or(matches!(model.field, Field::Torus(_)).then_some(model.dim / 2)),
        truncation: Some(model.truncation),
        seed: o.seed,
        samples: t.samples.or(o.samples),
    }
}

/// Run a single self-check suite as a task.
pub fn suite_task(name: &str, index: usize, opts: &SuiteOptions) -> Result<TaskReport, CoreError> {
    let rep = suites::run_suite(name, opts)?;
    let mut r = TaskReport::new(index, name);
    for c in rep.checks {
        r.check(c.label, c.passed, c.detail);
    }
    for (k, v) in rep.values {
        r.value(k, Value::Text { text: v });
    }
    Ok(r)
}

fn model_free(model: &Model, t: &Task, index: usize, o: &RunOptions) -> Option<TaskResult> {
    let n = || t.n.or(o.n).ok_or_else(|| "missing field `n`".to_string());
    let res = match t.kind.as_str() {
        "spectrum" => (|| {
            let n = n()?;
            let op = lefschetz_matrix(n, parity(t)?).map_err(|e| e.to_string())?;
            let mut r = TaskReport::new(index, &t.kind);
            r.value("spectrum", Value::Text { text: op.spectrum().map_err(|e| e.to_string())?.to_string() });
            r.value("det", Value::Scalar { text: op.det().map_err(|e| e.to_string())?.to_string() });
            Ok(r)
        })(),
        "cpn_table" => (|| {
            let n = n()?;
            if n == 0 || n > MAX_N {
                return Err(format!("n must lie in 1..={MAX_N}"));
            }
            let ring = cpn_structure_constants(n).map_err(|e| e.to_string())?;
            let mut r = TaskReport::new(index, &t.kind);
            cpn_values(&ring, &mut r);
            r.check("symmetric", ring.is_symmetric(), "");
            r.check("classical layer", ring.classical_layer_ok(), "");
            r.check("associative", ring.associative_up_to(n), "");
            Ok(r)
        })(),
        "cohomology" => (|| {
            if !matches!(model.field, Field::Torus(_)) || model.omega.as_ref().is_some_and(|o| *o != SymplecticForm::standard(o.n())) {
                return Err("cohomology needs the torus model with the standard symplectic form".into());
            }
            let n = model.dim / 2;
            let c = build_complex(&ComplexModel::Torus { n, truncation: model.truncation }, Mode::Laurent)
                .map_err(|e| e.to_string())?;
            let (lo, hi) = (0, 2 * n as i64);
            let q = c.quantum_cohomology_dims(lo, hi);
            let betti = c.dr_cohomology_dims().cohomology;
            let mut r = TaskReport::new(index, &t.kind);
            r.value("quantum", Value::Ints { degrees: q.degrees.clone(), values: q.cohomology.clone() });
            r.value("de Rham", Value::Ints { degrees: (0..betti.len() as i64).collect(), values: betti });
            r.check("spectral sequence degenerates", c.degeneracy_check(lo, hi), "");
            Ok(r)
        })(),
        // `stokes` with an expression checks that one form; without one it is the suite.
        k if SUITES.iter().any(|(s, _)| *s == k) && !(k == "stokes" && t.expr.is_some()) => {
            suite_task(k, index, &suite_options(model, t, o)).map_err(|e| e.to_string())
        }
        _ => return None,
    };
    Some(res)
}

fn run_task(s: &Scenario, model: &Model, t: &Task, index: usize, o: &RunOptions) -> TaskResult {
    if let Some(r) = model_free(model, t, index, o) {
        return r;
    }
    let torus_only = matches!(t.kind.as_str(), "integral" | "stokes");
    match &model.field {
        Field::Poly(_) if torus_only => Err(format!("{} needs the torus model", t.kind)),
        Field::Poly(w) => Ctx { dim: model.dim, w, omega: model.omega.as_ref(), truncation: None }.run(s, t, index),
        Field::Torus(w) => {
            let ctx = Ctx { dim: model.dim, w, omega: model.omega.as_ref(), truncation: Some(model.truncation) };
            if torus_only {
                ctx.torus(s, t, index)
            } else {
                ctx.run(s, t, index)
            }
        }
    }
}

fn apply_expect(t: &Task, r: &mut TaskReport) {
    if let Some(want) = &t.expect {
        let got = r.values.first().map(|v| v.value.text()).unwrap_or_default();
        let ok = got.trim() == want.trim();
        r.check("matches expectation", ok, if ok { String::new() } else { format!("got {got}") });
    }
}

/// Tasks run on separate threads; results keep the scenario order.
pub fn run_scenario(s: &Scenario, model: &Model, o: &RunOptions) -> Result<Vec<TaskReport>, RunError> {
    let results: Vec<TaskResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = s
            .tasks
            .iter()
            .enumerate()
            .map(|(i, t)| scope.spawn(move || run_task(s, model, t, i, o)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("task panicked".into()))).collect()
    });
    s.tasks
        .iter()
        .zip(results)
        .enumerate()
        .map(|(i, (t, r))| {
            let mut r = r.map_err(|msg| RunError::Task { index: i + 1, kind: t.kind.clone(), msg })?;
            apply_expect(t, &mut r);
            Ok(r)
        })
        .collect()
}

/// Normalization constants reported alongside scenario results.
pub fn ledger(seed: u64) -> Result<Vec<LedgerEntry>, CoreError> {
    let opts = SuiteOptions { n: Some(2), seed, ..SuiteOptions::default() };
    let rep = suites::run_suite("conventions", &opts)?;
    let mut out: Vec<LedgerEntry> = rep.values.into_iter().map(|(key, value)| LedgerEntry { key, value }).collect();
    let rows = [
        ("quantum product", "a ^_h b = sum_k h^k/k! <w^k, a, b>, w the inverse of omega"),
        ("d_h", "d - h (d i_w - i_w d)"),
        ("sample e1 ^_h e2", "e1^e2 - h"),
    ];
    out.extend(rows.iter().map(|(k, v)| LedgerEntry { key: (*k).into(), value: (*v).into() }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(text: &str) -> Result<Vec<TaskReport>, String> {
        let s = Scenario::parse(text).map_err(|e| e.to_string())?;
        let m = Model::build(&s, None, None).map_err(|e| e.to_string())?;
        run_scenario(&s, &m, &RunOptions { seed: 1, samples: None, n: None }).map_err(|e| e.to_string())
    }

    #[test]
    fn operators_on_flat_model() {
        let r = go(r#"
            model = "flat"
            dim = 4
            [[tasks]]
            kind = "operator"
            operator = "Lh"
            expr = "1"
            expect = "e1^e2 + e3^e4"
            [[tasks]]
            kind = "operator"
            operator = "Ah"
            expr = "e[1]"
            expect = "e1"
            [[tasks]]
            kind = "operator"
            operator = "dh"
            expr = "x[1] * e[2]"
            "#)
        .unwrap();
        assert!(r[0].passed && r[1].passed, "{r:?}");
        assert_eq!(r[2].values[0].value.text(), "e1^e2 + (-1)*h");
    }

    #[test]
    fn operator_needs_constant_coefficients() {
        let e = go("model = \"flat\"\n[[tasks]]\nkind = \"operator\"\noperator = \"L\"\nexpr = \"x[1]\"").unwrap_err();
        assert!(e.contains("constant coefficients"), "{e}");
        let e = go("model = \"heisenberg\"\n[[tasks]]\nkind = \"operator\"\noperator = \"L\"\nexpr = \"1\"").unwrap_err();
        assert!(e.contains("symplectic"), "{e}");
    }

    #[test]
    fn torus_tasks() {
        let r = go(r#"
            model = "torus"
            dim = 2
            truncation = 1
            [[tasks]]
            kind = "integral"
            expr = "e[1]^e[2] + 3*h"
            expect = "1 + 3*h"
            [[tasks]]
            kind = "stokes"
            expr = "mode(1,0) * e[2] + i * mode(0,-1)"
            [[tasks]]
            kind = "cohomology"
            "#)
        .unwrap();
        assert!(r.iter().all(|t| t.passed), "{r:?}");
        let e = go("model = \"torus\"\ntruncation = 1\n[[tasks]]\nkind = \"product\"\nexpr = \"mode(2,0)\"").unwrap_err();
        assert!(e.contains("outside the truncation"), "{e}");
    }

    #[test]
    fn line_bundle_chern() {
        let r = go(r#"
            model = "flat"
            [[tasks]]
            kind = "chern"
            connection = [["x[1] * e[2]"]]
            "#)
        .unwrap();
        assert!(r[0].passed);
        assert_eq!(r[0].values[0].value.text(), "e1^e2 + (-1)*h");
    }

    #[test]
    fn cpn_and_spectrum() {
        let r = go(r#"
            model = "flat"
            [[tasks]]
            kind = "cpn_table"
            n = 2
            [[tasks]]
            kind = "spectrum"
            n = 2
            expect = "(t - 2)^8"
            "#)
        .unwrap();
        assert!(r.iter().all(|t| t.passed), "{r:?}");
        let w11 = r[0].values.iter().find(|v| v.name == "w^1 * w^1").unwrap();
        let Value::Form { terms, .. } = &w11.value else { panic!() };
        assert!(terms.iter().any(|t| t.basis == "w^2"));
    }

    #[test]
    fn unknown_kind_is_an_error() {
        let e = go("model = \"flat\"\n[[tasks]]\nkind = \"nope\"").unwrap_err();
        assert!(e.contains("associativity"), "{e}");
    }
}
