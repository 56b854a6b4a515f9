//! Mixed-binary model of the two-dimensional greedy step, with a
//! deterministic text exporter, a parser for the emitted format, and a
//! feasibility checker for candidate solutions.
//!
//! Minimizing the model over (y1, y2) is equivalent to minimizing the
//! two-dimensional functional of [`crate::functional`] over the unit square:
//! the coordinate maxima max(x, y_k) are linearized with one binary selector
//! per coordinate per point, the squares and their product are carried by
//! auxiliary variables, and the objective expands the functional into
//! constant, linear, and bilinear terms with **no constant offset** — a
//! feasible assignment's objective equals `functional_nd((y1, y2))` exactly.
//!
//! Exports are byte-deterministic: fixed variable and constraint ordering,
//! 17-significant-digit decimals, LF line endings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::points::{require_valid, PointSet};
use crate::textio::fmt_g17;
use crate::{Error, Result};

/// Constraint sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn token(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// A model variable. Binaries take values in {0, 1}; continuous variables
/// have box bounds (always [0, 1] in models built here).
#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub binary: bool,
}

/// constant + Σ coef·var + Σ coef·var·var, in emission order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Expr {
    pub constant: f64,
    pub linear: Vec<(usize, f64)>,
    pub bilinear: Vec<(usize, usize, f64)>,
}

impl Expr {
    fn eval(&self, values: &[f64]) -> f64 {
        let mut acc = self.constant;
        for &(i, c) in &self.linear {
            acc += c * values[i];
        }
        for &(i, j, c) in &self.bilinear {
            acc += c * values[i] * values[j];
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub lhs: Expr,
    pub rel: Relation,
    pub rhs: f64,
}

/// The greedy-step model for a two-dimensional point set of size n.
///
/// Variables, in declaration order: y1, y2, v1, v2, v3, the fixed
/// coordinates x1..x_{2n}, the maxima t1..t_n, u1..u_n, and the binary
/// selectors r1..r_n, s1..s_n. Constraints, in order: the 2n coordinate
/// fixings, 4n selector inequalities, 2n max-linking equalities, and the
/// 3 product equalities — 8n+3 in total.
#[derive(Debug, Clone, PartialEq)]
pub struct NlpModel {
    pub vars: Vec<Variable>,
    /// Minimized.
    pub objective: Expr,
    pub constraints: Vec<Constraint>,
    /// Number of points the model was built from (binaries / 2).
    pub n: usize,
}

impl NlpModel {
    /// Index of a variable by name.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }
}

fn unit_var(name: String, binary: bool) -> Variable {
    Variable {
        name,
        lo: 0.0,
        hi: 1.0,
        binary,
    }
}

/// Builds the greedy-step model for a two-dimensional point set.
///
/// The max linearization for each point j uses that point's own coordinates
/// x_{2j-1}, x_{2j}: the binary r_j satisfies r_j − 1 ≤ x_{2j-1} − y1 ≤ r_j,
/// forcing r_j = 1 exactly when x_{2j-1} > y1 (either value is feasible at
/// equality, where both max branches coincide), and the link
/// t_j = (1 − r_j)·y1 + r_j·x_{2j-1} then makes t_j the max. The objective is
///   −(n+1)/2 · v3 + (1 − y1)(1 − y2) + 2 Σ_j (1 − t_j)(1 − u_j),
/// expanded to constant + linear + bilinear form.
pub fn build_model(ps: &PointSet) -> Result<NlpModel> {
    if ps.dim() != 2 {
        return Err(Error::domain(format!(
            "the greedy-step model is two-dimensional, got d = {}",
            ps.dim()
        )));
    }
    require_valid(ps)?;
    let n = ps.len();

    let mut vars = Vec::with_capacity(6 * n + 5);
    vars.push(unit_var("y1".into(), false));
    vars.push(unit_var("y2".into(), false));
    for k in 1..=3 {
        vars.push(unit_var(format!("v{k}"), false));
    }
    for i in 1..=2 * n {
        vars.push(unit_var(format!("x{i}"), false));
    }
    for j in 1..=n {
        vars.push(unit_var(format!("t{j}"), false));
    }
    for j in 1..=n {
        vars.push(unit_var(format!("u{j}"), false));
    }
    for j in 1..=n {
        vars.push(unit_var(format!("r{j}"), true));
    }
    for j in 1..=n {
        vars.push(unit_var(format!("s{j}"), true));
    }

    // Variable index helpers (indices are fixed by the declaration order).
    let y = [0usize, 1];
    let v = [2usize, 3, 4];
    let x = |i: usize| 4 + i; // x_i, i = 1..=2n
    let t = |j: usize| 4 + 2 * n + j; // t_j, j = 1..=n
    let u = |j: usize| 4 + 3 * n + j;
    let r = |j: usize| 4 + 4 * n + j;
    let s = |j: usize| 4 + 5 * n + j;

    let lin = |terms: Vec<(usize, f64)>| Expr {
        constant: 0.0,
        linear: terms,
        bilinear: vec![],
    };

    let mut constraints = Vec::with_capacity(8 * n + 3);
    // Coordinate fixings.
    for j in 1..=n {
        for k in 0..2 {
            let i = 2 * (j - 1) + k + 1;
            constraints.push(Constraint {
                name: format!("fix_x{i}"),
                lhs: lin(vec![(x(i), 1.0)]),
                rel: Relation::Eq,
                rhs: ps.coord(j - 1, k),
            });
        }
    }
    // Selector inequalities: r_j − 1 ≤ x_{2j-1} − y1 ≤ r_j, rearranged with
    // all variables on the left; same for s_j with x_{2j}, y2.
    for (k, sel) in [(0usize, &r as &dyn Fn(usize) -> usize), (1, &s)] {
        let names = if k == 0 { "r" } else { "s" };
        for j in 1..=n {
            let xi = x(2 * (j - 1) + k + 1);
            for (suffix, rel, rhs) in [("ub", Relation::Le, 1.0), ("lb", Relation::Ge, 0.0)] {
                constraints.push(Constraint {
                    name: format!("sel_{names}{j}_{suffix}"),
                    lhs: lin(vec![(sel(j), 1.0), (xi, -1.0), (y[k], 1.0)]),
                    rel,
                    rhs,
                });
            }
        }
    }
    // Max links: t_j − y1 + r_j·y1 − r_j·x_{2j-1} = 0 (so t_j = max at
    // binary-feasible points); likewise u_j.
    for (k, maxv, sel) in [
        (0usize, &t as &dyn Fn(usize) -> usize, &r as &dyn Fn(usize) -> usize),
        (1, &u, &s),
    ] {
        let names = if k == 0 { "t" } else { "u" };
        for j in 1..=n {
            let xi = x(2 * (j - 1) + k + 1);
            constraints.push(Constraint {
                name: format!("def_{names}{j}"),
                lhs: Expr {
                    constant: 0.0,
                    linear: vec![(maxv(j), 1.0), (y[k], -1.0)],
                    bilinear: vec![(sel(j), y[k], 1.0), (sel(j), xi, -1.0)],
                },
                rel: Relation::Eq,
                rhs: 0.0,
            });
        }
    }
    // Products: v1 = y1², v2 = y2², v3 = (1−v1)(1−v2).
    for k in 0..2 {
        constraints.push(Constraint {
            name: format!("def_v{}", k + 1),
            lhs: Expr {
                constant: 0.0,
                linear: vec![(v[k], 1.0)],
                bilinear: vec![(y[k], y[k], -1.0)],
            },
            rel: Relation::Eq,
            rhs: 0.0,
        });
    }
    constraints.push(Constraint {
        name: "def_v3".into(),
        lhs: Expr {
            constant: 0.0,
            linear: vec![(v[2], 1.0), (v[0], 1.0), (v[1], 1.0)],
            bilinear: vec![(v[0], v[1], -1.0)],
        },
        rel: Relation::Eq,
        rhs: 1.0,
    });

    // Objective: constant, v3, y1, y2, all t_j, all u_j, then y1·y2 and the
    // t_j·u_j products.
    let mut linear = vec![
        (v[2], -0.5 * (n as f64 + 1.0)),
        (y[0], -1.0),
        (y[1], -1.0),
    ];
    for j in 1..=n {
        linear.push((t(j), -2.0));
    }
    for j in 1..=n {
        linear.push((u(j), -2.0));
    }
    let mut bilinear = vec![(y[0], y[1], 1.0)];
    for j in 1..=n {
        bilinear.push((t(j), u(j), 2.0));
    }
    let objective = Expr {
        constant: 1.0 + 2.0 * n as f64,
        linear,
        bilinear,
    };

    Ok(NlpModel {
        vars,
        objective,
        constraints,
        n,
    })
}

fn push_expr(out: &mut String, expr: &Expr, vars: &[Variable]) {
    let mut first = true;
    let mut push_term = |out: &mut String, coef: f64, names: Option<(usize, Option<usize>)>| {
        if first {
            if coef < 0.0 {
                out.push_str("- ");
            }
            first = false;
        } else if coef < 0.0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&fmt_g17(coef.abs()));
        if let Some((i, second)) = names {
            let _ = write!(out, " {}", vars[i].name);
            if let Some(j) = second {
                let _ = write!(out, " * {}", vars[j].name);
            }
        }
    };
    if expr.constant != 0.0 || (expr.linear.is_empty() && expr.bilinear.is_empty()) {
        push_term(out, expr.constant, None);
    }
    for &(i, c) in &expr.linear {
        push_term(out, c, Some((i, None)));
    }
    for &(i, j, c) in &expr.bilinear {
        push_term(out, c, Some((i, Some(j))));
    }
}

/// Renders the model in the plain-text format: header comments, the
/// `minimize:` line, `var NAME in [lo, hi]` declarations, `bin NAME`
/// declarations, then one constraint per line as `name: expr {<=,>=,=} rhs`.
/// Bilinear terms are written `v * w`; every number uses 17 significant
/// digits. Identical models render to identical bytes.
pub fn render_model(m: &NlpModel) -> String {
    let mut out = String::new();
    let n = m.n;
    out.push_str("# Greedy-step model: choosing the next point of a two-dimensional set.\n");
    out.push_str("# Minimizing over (y1, y2) in the unit square is equivalent to minimizing\n");
    out.push_str("#   F(y) = -(n+1)/2 * (1-y1^2)(1-y2^2) + (1-y1)(1-y2)\n");
    out.push_str("#          + 2 * sum_j (1 - max(x_{2j-1}, y1)) * (1 - max(x_{2j}, y2))\n");
    out.push_str("# where (x_{2j-1}, x_{2j}) are the coordinates of the j-th existing point,\n");
    out.push_str("# fixed by the fix_* equality constraints.\n");
    out.push_str("# Auxiliary variables:\n");
    out.push_str("#   v1 = y1^2, v2 = y2^2                       (def_v1, def_v2)\n");
    out.push_str("#   v3 = (1-y1^2)(1-y2^2), as v3 + v1 + v2 - v1*v2 = 1   (def_v3)\n");
    out.push_str("#   t_j = max(x_{2j-1}, y1), u_j = max(x_{2j}, y2)       (def_t*, def_u*)\n");
    out.push_str("#   binary r_j = 1 exactly when x_{2j-1} > y1, forced by sel_r*_ub/lb\n");
    out.push_str("#   (r_j - 1 <= x_{2j-1} - y1 <= r_j); s_j likewise for x_{2j} vs y2.\n");
    out.push_str("# Convention notes: a variant formulation indexes the max links as\n");
    out.push_str("# x_{2j+1}, x_{2j+2} and writes the pairwise objective term as\n");
    out.push_str("# 2 * sum_j t_j u_j. This file uses each point's own coordinates\n");
    out.push_str("# x_{2j-1}, x_{2j} and the term 2 * sum_j (1-t_j)(1-u_j); with these\n");
    out.push_str("# choices a feasible assignment's objective equals F(y1, y2) exactly,\n");
    out.push_str("# with no constant offset.\n");
    out.push_str("# Objective expansion order: constant, v3, y1, y2, t_1..t_n, u_1..u_n,\n");
    out.push_str("# y1*y2, t_1*u_1 .. t_n*u_n.\n");
    let _ = writeln!(out, "# n = {n} points; deterministic export (LF, 17-digit decimals).");
    out.push_str("minimize: ");
    push_expr(&mut out, &m.objective, &m.vars);
    out.push('\n');
    for v in m.vars.iter().filter(|v| !v.binary) {
        let _ = writeln!(out, "var {} in [{}, {}]", v.name, fmt_g17(v.lo), fmt_g17(v.hi));
    }
    for v in m.vars.iter().filter(|v| v.binary) {
        let _ = writeln!(out, "bin {}", v.name);
    }
    for c in &m.constraints {
        let _ = write!(out, "{}: ", c.name);
        push_expr(&mut out, &c.lhs, &m.vars);
        let _ = writeln!(out, " {} {}", c.rel.token(), fmt_g17(c.rhs));
    }
    out
}

/// Writes the rendered model to `path`.
pub fn export_model_to_path(m: &NlpModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, render_model(m)).map_err(|e| Error::io(path, e))
}

struct ExprParser<'a> {
    tokens: Vec<&'a str>,
    pos: usize,
    line: usize,
}

impl<'a> ExprParser<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        ExprParser {
            tokens: text.split_whitespace().collect(),
            pos: 0,
            line,
        }
    }

    fn peek(&self) -> Option<&'a str> {
        self.tokens.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<&'a str> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_coef(&mut self, tok: &str) -> Result<f64> {
        tok.parse::<f64>()
            .map_err(|_| Error::parse(self.line, format!("expected a number, got `{tok}`")))
    }

    /// Parses `[-] coef [var [* var]] (("+"|"-") coef [var [* var]])*` up to
    /// an optional relation token, which is left unconsumed.
    fn parse_expr(&mut self, var_index: &BTreeMap<String, usize>) -> Result<Expr> {
        let mut expr = Expr::default();
        let mut sign = 1.0f64;
        if self.peek() == Some("-") {
            self.next();
            sign = -1.0;
        }
        loop {
            let tok = self
                .next()
                .ok_or_else(|| Error::parse(self.line, "expression ended unexpectedly"))?;
            let coef = sign * self.parse_coef(tok)?;
            // Optional variable (and optional `* var`).
            let is_break = |t: &str| matches!(t, "+" | "-" | "<=" | ">=" | "=");
            let mut names: Option<(usize, Option<usize>)> = None;
            if let Some(t) = self.peek() {
                if !is_break(t) {
                    let i = *var_index.get(t).ok_or_else(|| {
                        Error::parse(self.line, format!("unknown variable `{t}`"))
                    })?;
                    self.next();
                    if self.peek() == Some("*") {
                        self.next();
                        let t2 = self.next().ok_or_else(|| {
                            Error::parse(self.line, "dangling `*` in expression")
                        })?;
                        let j = *var_index.get(t2).ok_or_else(|| {
                            Error::parse(self.line, format!("unknown variable `{t2}`"))
                        })?;
                        names = Some((i, Some(j)));
                    } else {
                        names = Some((i, None));
                    }
                }
            }
            match names {
                None => expr.constant += coef,
                Some((i, None)) => expr.linear.push((i, coef)),
                Some((i, Some(j))) => expr.bilinear.push((i, j, coef)),
            }
            match self.peek() {
                Some("+") => {
                    self.next();
                    sign = 1.0;
                }
                Some("-") => {
                    self.next();
                    sign = -1.0;
                }
                _ => return Ok(expr),
            }
        }
    }
}

/// Parses text in the emitted format back into a model. Round-trips
/// [`render_model`] exactly (same variables, ordering, and coefficients).
pub fn parse_model(text: &str) -> Result<NlpModel> {
    let mut vars: Vec<Variable> = Vec::new();
    let mut objective_line: Option<(usize, &str)> = None;
    let mut constraint_lines: Vec<(usize, &str, &str)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("minimize:") {
            if objective_line.is_some() {
                return Err(Error::parse(lineno, "duplicate objective line"));
            }
            objective_line = Some((lineno, rest));
        } else if let Some(rest) = line.strip_prefix("var ") {
            let (name, bounds) = rest.split_once(" in ").ok_or_else(|| {
                Error::parse(lineno, "variable declaration must be `var NAME in [lo, hi]`")
            })?;
            let bounds = bounds
                .trim()
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| Error::parse(lineno, "bounds must be bracketed"))?;
            let (lo, hi) = bounds
                .split_once(',')
                .ok_or_else(|| Error::parse(lineno, "bounds must be `lo, hi`"))?;
            let parse_b = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::parse(lineno, format!("bad bound `{}`", s.trim())))
            };
            vars.push(Variable {
                name: name.trim().to_string(),
                lo: parse_b(lo)?,
                hi: parse_b(hi)?,
                binary: false,
            });
        } else if let Some(rest) = line.strip_prefix("bin ") {
            vars.push(Variable {
                name: rest.trim().to_string(),
                lo: 0.0,
                hi: 1.0,
                binary: true,
            });
        } else if let Some((name, rest)) = line.split_once(':') {
            constraint_lines.push((lineno, name.trim(), rest));
        } else {
            return Err(Error::parse(lineno, format!("unrecognized line `{line}`")));
        }
    }

    let var_index: BTreeMap<String, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.name.clone(), i))
        .collect();
    if var_index.len() != vars.len() {
        return Err(Error::parse(0, "duplicate variable declaration"));
    }

    let (obj_lineno, obj_text) =
        objective_line.ok_or_else(|| Error::parse(0, "missing `minimize:` line"))?;
    let mut p = ExprParser::new(obj_text, obj_lineno);
    let objective = p.parse_expr(&var_index)?;
    if p.peek().is_some() {
        return Err(Error::parse(obj_lineno, "trailing tokens after objective"));
    }

    let mut constraints = Vec::with_capacity(constraint_lines.len());
    for (lineno, name, rest) in constraint_lines {
        let mut p = ExprParser::new(rest, lineno);
        let lhs = p.parse_expr(&var_index)?;
        let rel = match p.next() {
            Some("<=") => Relation::Le,
            Some(">=") => Relation::Ge,
            Some("=") => Relation::Eq,
            other => {
                return Err(Error::parse(
                    lineno,
                    format!("expected a relation, got `{}`", other.unwrap_or("end of line")),
                ))
            }
        };
        let rhs_tok = p
            .next()
            .ok_or_else(|| Error::parse(lineno, "missing right-hand side"))?;
        let rhs = rhs_tok
            .parse::<f64>()
            .map_err(|_| Error::parse(lineno, format!("bad right-hand side `{rhs_tok}`")))?;
        if p.peek().is_some() {
            return Err(Error::parse(lineno, "trailing tokens after constraint"));
        }
        constraints.push(Constraint {
            name: name.to_string(),
            lhs,
            rel,
            rhs,
        });
    }

    let n = vars.iter().filter(|v| v.binary).count() / 2;
    Ok(NlpModel {
        vars,
        objective,
        constraints,
        n,
    })
}

/// Reads and parses a model file.
pub fn read_model_from_path(path: impl AsRef<Path>) -> Result<NlpModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_model(&text)
}

/// Outcome of checking an assignment against a model.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionReport {
    /// Objective value at the assignment.
    pub objective: f64,
    /// Largest violation over all constraints, variable bounds, and binary
    /// integrality requirements (0 when feasible).
    pub max_violation: f64,
    /// What attains `max_violation`, when it is positive.
    pub worst: Option<String>,
}

/// Evaluates every requirement of the model at `assignment` (variable name →
/// value; all variables must be present) and reports the objective together
/// with the largest violation: equality residue |lhs − rhs|, one-sided
/// inequality excess, bound excess, or distance to {0, 1} for binaries.
pub fn check_solution(m: &NlpModel, assignment: &BTreeMap<String, f64>) -> Result<SolutionReport> {
    let mut values = Vec::with_capacity(m.vars.len());
    for v in &m.vars {
        let val = assignment
            .get(&v.name)
            .copied()
            .ok_or_else(|| Error::domain(format!("assignment is missing variable `{}`", v.name)))?;
        values.push(val);
    }
    let mut max_violation = 0.0f64;
    let mut worst = None;
    let mut offer = |violation: f64, what: &dyn Fn() -> String| {
        if violation > max_violation {
            max_violation = violation;
            worst = Some(what());
        }
    };
    for (v, &val) in m.vars.iter().zip(&values) {
        if !val.is_finite() {
            return Err(Error::domain(format!(
                "assignment value for `{}` is not finite",
                v.name
            )));
        }
        offer((v.lo - val).max(val - v.hi).max(0.0), &|| {
            format!("bounds of {}", v.name)
        });
        if v.binary {
            offer(val.abs().min((val - 1.0).abs()), &|| {
                format!("integrality of {}", v.name)
            });
        }
    }
    for c in &m.constraints {
        let lhs = c.lhs.eval(&values);
        let violation = match c.rel {
            Relation::Eq => (lhs - c.rhs).abs(),
            Relation::Le => (lhs - c.rhs).max(0.0),
            Relation::Ge => (c.rhs - lhs).max(0.0),
        };
        offer(violation, &|| c.name.clone());
    }
    Ok(SolutionReport {
        objective: m.objective.eval(&values),
        max_violation,
        worst,
    })
}

/// Builds the canonical feasible assignment at a candidate (y1, y2): the
/// fixed coordinates are read back from the fix_* constraints, binaries take
/// the max-consistent branch (ties at x = y resolve to the y branch), and the
/// auxiliaries are set to the exact products the equalities prescribe.
pub fn canonical_assignment(m: &NlpModel, y: &[f64; 2]) -> Result<BTreeMap<String, f64>> {
    let n = m.n;
    let mut x = vec![0.0f64; 2 * n];
    for c in &m.constraints {
        if let Some(rest) = c.name.strip_prefix("fix_x") {
            let i: usize = rest
                .parse()
                .map_err(|_| Error::domain(format!("malformed fixing constraint `{}`", c.name)))?;
            if i == 0 || i > 2 * n {
                return Err(Error::domain(format!(
                    "fixing constraint `{}` is out of range",
                    c.name
                )));
            }
            x[i - 1] = c.rhs;
        }
    }
    let mut a = BTreeMap::new();
    a.insert("y1".to_string(), y[0]);
    a.insert("y2".to_string(), y[1]);
    let v1 = y[0] * y[0];
    let v2 = y[1] * y[1];
    a.insert("v1".to_string(), v1);
    a.insert("v2".to_string(), v2);
    a.insert("v3".to_string(), 1.0 - v1 - v2 + v1 * v2);
    for i in 1..=2 * n {
        a.insert(format!("x{i}"), x[i - 1]);
    }
    for j in 1..=n {
        let (x1, x2) = (x[2 * (j - 1)], x[2 * (j - 1) + 1]);
        let r = if x1 > y[0] { 1.0 } else { 0.0 };
        let s = if x2 > y[1] { 1.0 } else { 0.0 };
        a.insert(format!("r{j}"), r);
        a.insert(format!("s{j}"), s);
        a.insert(format!("t{j}"), if r == 1.0 { x1 } else { y[0] });
        a.insert(format!("u{j}"), if s == 1.0 { x2 } else { y[1] });
    }
    Ok(a)
}
