//! Algebra descriptions as line-oriented text files (or the equivalent
//! JSON encoding), and their elaboration into ring, bracket, and KP
//! structures.
//!
//! Text grammar, one `key: value` per line, `#` starts a comment:
//!
//! ```text
//! generators: x y z            # required, distinct names
//! order: grevlex               # or lex; optional precedence names after
//! relation: <poly>             # repeatable
//! denominator: <poly>          # repeatable
//! bracket: 1 2 : <poly>        # upper-triangular, 1-based
//! levelset: <poly>             # shorthand: sets the bracket table and
//!                              # the relation from one constraint
//! metric: euclidean            # or construct, or entries "i j : <elem>"
//! eta: <elem>                  # or construct (with metric: construct)
//! ```
//!
//! The same schema in JSON: string fields keep the same value syntax and
//! entry lists are arrays of the same entry strings.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::kp::KPCtx;
use crate::matrix::{RingMatrix, Shape};
use crate::poisson::{level_set_table, BracketTable};
use crate::poly::{MonomialOrder, OrderKind};
use crate::ring::{Elem, RingCtx};
use crate::skewnf::MetricConstruction;

/// An expression string together with the config line it came from
/// (0 for encodings without line structure).
#[derive(Debug, Clone, PartialEq)]
pub struct Sourced {
    pub line: usize,
    pub text: String,
}

impl Sourced {
    pub fn new(line: usize, text: impl Into<String>) -> Self {
        Sourced {
            line,
            text: text.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MetricSpec {
    Euclidean,
    Construct,
    Entries(Vec<(usize, usize, Sourced)>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum EtaSpec {
    Unset,
    Construct,
    Expr(Sourced),
}

#[derive(Debug, Clone)]
pub struct AlgebraConfig {
    pub generators: Vec<String>,
    pub order_kind: OrderKind,
    pub order_precedence: Option<Vec<String>>,
    pub relations: Vec<Sourced>,
    pub denominators: Vec<Sourced>,
    pub brackets: Vec<(usize, usize, Sourced)>,
    pub levelset: Option<Sourced>,
    pub metric: MetricSpec,
    pub eta: EtaSpec,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        AlgebraConfig {
            generators: Vec::new(),
            order_kind: OrderKind::GrevLex,
            order_precedence: None,
            relations: Vec::new(),
            denominators: Vec::new(),
            brackets: Vec::new(),
            levelset: None,
            metric: MetricSpec::Euclidean,
            eta: EtaSpec::Unset,
        }
    }
}

fn config_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Config {
        line,
        msg: msg.into(),
    }
}

/// `"i j : text"` with 1-based indices.
fn parse_entry(line_no: usize, value: &str) -> Result<(usize, usize, Sourced)> {
    let (head, text) = value
        .split_once(':')
        .ok_or_else(|| config_err(line_no, "expected `i j : <expression>`"))?;
    let idx: Vec<&str> = head.split_whitespace().collect();
    if idx.len() != 2 {
        return Err(config_err(
            line_no,
            "expected two 1-based indices before `:`",
        ));
    }
    let i: usize = idx[0]
        .parse()
        .map_err(|_| config_err(line_no, format!("bad index `{}`", idx[0])))?;
    let j: usize = idx[1]
        .parse()
        .map_err(|_| config_err(line_no, format!("bad index `{}`", idx[1])))?;
    if i == 0 || j == 0 {
        return Err(config_err(line_no, "indices are 1-based"));
    }
    Ok((i - 1, j - 1, Sourced::new(line_no, text.trim())))
}

fn parse_order(line_no: usize, value: &str) -> Result<(OrderKind, Option<Vec<String>>)> {
    let mut parts = value.split_whitespace();
    let kind = match parts.next() {
        Some("grevlex") => OrderKind::GrevLex,
        Some("lex") => OrderKind::Lex,
        other => {
            return Err(config_err(
                line_no,
                format!(
                    "unknown monomial order `{}` (expected grevlex or lex)",
                    other.unwrap_or("")
                ),
            ))
        }
    };
    let prec: Vec<String> = parts.map(str::to_string).collect();
    Ok((kind, if prec.is_empty() { None } else { Some(prec) }))
}

/// Parse the line-oriented text form.
pub fn parse_config_text(text: &str) -> Result<AlgebraConfig> {
    let mut cfg = AlgebraConfig::default();
    let mut saw_generators = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| config_err(line_no, "expected `key: value`"))?;
        let value = value.trim();
        match key.trim() {
            "generators" => {
                cfg.generators = value
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect();
                saw_generators = true;
            }
            "order" => {
                let (kind, prec) = parse_order(line_no, value)?;
                cfg.order_kind = kind;
                cfg.order_precedence = prec;
            }
            "relation" => cfg.relations.push(Sourced::new(line_no, value)),
            "denominator" => cfg.denominators.push(Sourced::new(line_no, value)),
            "bracket" => cfg.brackets.push(parse_entry(line_no, value)?),
            "levelset" => {
                if cfg.levelset.is_some() {
                    return Err(config_err(line_no, "duplicate `levelset`"));
                }
                cfg.levelset = Some(Sourced::new(line_no, value));
            }
            "metric" => match value {
                "euclidean" => cfg.metric = MetricSpec::Euclidean,
                "construct" => cfg.metric = MetricSpec::Construct,
                _ => {
                    let entry = parse_entry(line_no, value)?;
                    match &mut cfg.metric {
                        MetricSpec::Entries(v) => v.push(entry),
                        _ => cfg.metric = MetricSpec::Entries(vec![entry]),
                    }
                }
            },
            "eta" => {
                cfg.eta = if value == "construct" {
                    EtaSpec::Construct
                } else {
                    EtaSpec::Expr(Sourced::new(line_no, value))
                }
            }
            other => return Err(config_err(line_no, format!("unknown key `{other}`"))),
        }
    }
    if !saw_generators || cfg.generators.is_empty() {
        return Err(config_err(0, "missing `generators`"));
    }
    Ok(cfg)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonConfig {
    generators: Vec<String>,
    #[serde(default)]
    order: Option<String>,
    #[serde(default)]
    relations: Vec<String>,
    #[serde(default)]
    denominators: Vec<String>,
    #[serde(default)]
    brackets: Vec<String>,
    #[serde(default)]
    levelset: Option<String>,
    #[serde(default)]
    metric: Option<serde_json::Value>,
    #[serde(default)]
    eta: Option<String>,
}

/// Parse the JSON encoding of the same schema.
pub fn parse_config_json(text: &str) -> Result<AlgebraConfig> {
    let raw: JsonConfig = serde_json::from_str(text)
        .map_err(|e| config_err(e.line(), format!("invalid JSON config: {e}")))?;
    let mut cfg = AlgebraConfig {
        generators: raw.generators,
        relations: raw
            .relations
            .into_iter()
            .map(|t| Sourced::new(0, t))
            .collect(),
        denominators: raw
            .denominators
            .into_iter()
            .map(|t| Sourced::new(0, t))
            .collect(),
        levelset: raw.levelset.map(|t| Sourced::new(0, t)),
        ..AlgebraConfig::default()
    };
    if cfg.generators.is_empty() {
        return Err(config_err(0, "missing `generators`"));
    }
    if let Some(order) = raw.order {
        let (kind, prec) = parse_order(0, &order)?;
        cfg.order_kind = kind;
        cfg.order_precedence = prec;
    }
    for b in raw.brackets {
        cfg.brackets.push(parse_entry(0, &b)?);
    }
    match raw.metric {
        None => {}
        Some(serde_json::Value::String(s)) if s == "euclidean" => {
            cfg.metric = MetricSpec::Euclidean
        }
        Some(serde_json::Value::String(s)) if s == "construct" => {
            cfg.metric = MetricSpec::Construct
        }
        Some(serde_json::Value::Array(items)) => {
            let mut entries = Vec::new();
            for item in items {
                match item {
                    serde_json::Value::String(s) => entries.push(parse_entry(0, &s)?),
                    _ => {
                        return Err(config_err(
                            0,
                            "metric entries must be strings `i j : <elem>`",
                        ))
                    }
                }
            }
            cfg.metric = MetricSpec::Entries(entries);
        }
        Some(_) => {
            return Err(config_err(
                0,
                "metric must be \"euclidean\", \"construct\", or an entry array",
            ))
        }
    }
    if let Some(eta) = raw.eta {
        cfg.eta = if eta == "construct" {
            EtaSpec::Construct
        } else {
            EtaSpec::Expr(Sourced::new(0, eta))
        };
    }
    Ok(cfg)
}

/// Load a config file; `.json` files (or files starting with `{`) use the
/// JSON encoding.
pub fn load_config(path: &std::path::Path) -> Result<AlgebraConfig> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().map(|e| e == "json").unwrap_or(false) || text.trim_start().starts_with('{')
    {
        parse_config_json(&text)
    } else {
        parse_config_text(&text)
    }
}

/// A config elaborated into ring data, ready to run a command.
#[derive(Debug)]
pub struct BuiltAlgebra {
    pub ring: RingCtx,
    pub table: BracketTable,
    pub metric: Option<RingMatrix>,
    pub eta: Option<Elem>,
    /// Construction mode: metric and eta come out of the localization
    /// pipeline instead of the config.
    pub construct: bool,
}

/// Map expression-level failures into config diagnostics: unknown names
/// become semantic errors carrying the offending string, and syntax errors
/// are re-anchored to the config line they came from.
fn at_line(src: &Sourced, e: Error) -> Error {
    match e {
        Error::UnknownIdentifier { name, .. } => {
            Error::Semantic(format!("unknown generator `{name}` in `{}`", src.text))
        }
        Error::Syntax { col, msg, .. } if src.line > 0 => Error::Config {
            line: src.line,
            msg: format!("{msg} (column {col} of the expression)"),
        },
        other => other,
    }
}

impl AlgebraConfig {
    pub fn monomial_order(&self) -> Result<MonomialOrder> {
        let n = self.generators.len();
        match &self.order_precedence {
            None => Ok(MonomialOrder::with_precedence(
                self.order_kind,
                (0..n).collect(),
            )),
            Some(names) => {
                let mut prec = Vec::with_capacity(n);
                for name in names {
                    let idx = self
                        .generators
                        .iter()
                        .position(|g| g == name)
                        .ok_or_else(|| {
                            Error::semantic(format!(
                                "unknown generator `{name}` in order precedence"
                            ))
                        })?;
                    if prec.contains(&idx) {
                        return Err(Error::semantic(format!(
                            "duplicate generator `{name}` in order precedence"
                        )));
                    }
                    prec.push(idx);
                }
                if prec.len() != n {
                    return Err(Error::semantic(
                        "order precedence must list every generator",
                    ));
                }
                Ok(MonomialOrder::with_precedence(self.order_kind, prec))
            }
        }
    }

    /// Elaborate the config: parse every expression, compute the Gröbner
    /// basis, certify denominators, and build the bracket table. Number
    /// and shape validation happens here; Poisson/KP verification is left
    /// to the commands.
    pub fn build(&self, budget: &Budget) -> Result<BuiltAlgebra> {
        let m = self.generators.len();
        let order = self.monomial_order()?;

        // Free scope for parsing relation/denominator polynomials.
        let free = RingCtx::with_budget(
            self.generators.clone(),
            vec![],
            vec![],
            order.clone(),
            budget.clone(),
        )?;

        let mut relations = Vec::new();
        for r in &self.relations {
            relations.push(free.parse_poly(&r.text).map_err(|e| at_line(r, e))?);
        }
        let levelset_poly = match &self.levelset {
            Some(src) => {
                if !self.brackets.is_empty() {
                    return Err(Error::semantic(
                        "`levelset` and explicit `bracket` entries are mutually exclusive",
                    ));
                }
                let c = free.parse_poly(&src.text).map_err(|e| at_line(src, e))?;
                relations.push(c.clone());
                Some(c)
            }
            None => None,
        };
        let mut denoms = Vec::new();
        for d in &self.denominators {
            denoms.push(free.parse_poly(&d.text).map_err(|e| at_line(d, e))?);
        }

        let ring = RingCtx::with_budget(
            self.generators.clone(),
            relations,
            denoms,
            order,
            budget.clone(),
        )?;

        let table = match &levelset_poly {
            Some(c) => level_set_table(&ring, c)?,
            None => {
                let mut upper = Vec::new();
                for (i, j, src) in &self.brackets {
                    if *i >= m || *j >= m {
                        return Err(Error::semantic(format!(
                            "bracket index ({}, {}) out of range for {} generators",
                            i + 1,
                            j + 1,
                            m
                        )));
                    }
                    let e = ring
                        .parse_elem(&src.text)
                        .map_err(|err| at_line(src, err))?;
                    upper.push((*i, *j, e));
                }
                BracketTable::from_upper(&ring, &upper)?
            }
        };

        let construct = self.metric == MetricSpec::Construct;
        if construct && matches!(self.eta, EtaSpec::Expr(_)) {
            return Err(Error::semantic(
                "`metric: construct` constructs eta as well; remove the explicit `eta`",
            ));
        }
        if !construct && self.eta == EtaSpec::Construct {
            return Err(Error::semantic(
                "`eta: construct` requires `metric: construct`",
            ));
        }

        let metric = match &self.metric {
            MetricSpec::Construct => None,
            MetricSpec::Euclidean => {
                Some(RingMatrix::identity(&ring, m).assume_shape(&ring, Shape::Symmetric))
            }
            MetricSpec::Entries(entries) => {
                let mut rows = vec![vec![ring.zero(); m]; m];
                let mut seen = vec![vec![false; m]; m];
                for (i, j, src) in entries {
                    if *i >= m || *j >= m {
                        return Err(Error::semantic(format!(
                            "metric index ({}, {}) out of range",
                            i + 1,
                            j + 1
                        )));
                    }
                    if seen[*i][*j] {
                        return Err(Error::semantic(format!(
                            "duplicate metric entry ({}, {})",
                            i + 1,
                            j + 1
                        )));
                    }
                    seen[*i][*j] = true;
                    seen[*j][*i] = true;
                    let e = ring
                        .parse_elem(&src.text)
                        .map_err(|err| at_line(src, err))?;
                    rows[*i][*j] = e.clone();
                    rows[*j][*i] = e;
                }
                Some(RingMatrix::new(&ring, rows, Shape::Symmetric)?)
            }
        };

        let eta = match &self.eta {
            EtaSpec::Expr(src) => Some(ring.parse_elem(&src.text).map_err(|e| at_line(src, e))?),
            EtaSpec::Construct => None,
            EtaSpec::Unset => {
                if construct {
                    None
                } else {
                    return Err(Error::semantic(
                        "missing `eta` (or use `metric: construct`)",
                    ));
                }
            }
        };

        Ok(BuiltAlgebra {
            ring,
            table,
            metric,
            eta,
            construct,
        })
    }
}

impl BuiltAlgebra {
    /// Certify the Poisson structure: centrality of relations first, then
    /// Jacobi on generator triples.
    pub fn certify_poisson(&self) -> Result<()> {
        if let Some(w) = self.table.relations_central(&self.ring) {
            return Err(Error::Verification(format!(
                "bracket does not descend to the quotient: {{x^{}, relation #{}}} = {}",
                w.gen + 1,
                w.relation + 1,
                self.ring.format_elem(&w.residual)
            )));
        }
        if let Some(w) = self.table.jacobi_check(&self.ring) {
            return Err(Error::Verification(format!(
                "Jacobi identity fails on generators ({}, {}, {}): residual {}",
                w.triple.0 + 1,
                w.triple.1 + 1,
                w.triple.2 + 1,
                self.ring.format_elem(&w.residual)
            )));
        }
        Ok(())
    }

    /// Assemble a KP context without verification (for report-style
    /// commands that print PASS/FAIL themselves).
    pub fn assemble_kp(&self) -> Result<KPCtx> {
        match (&self.metric, &self.eta) {
            (Some(g), Some(eta)) => {
                KPCtx::assemble(self.ring.clone(), self.table.clone(), g.clone(), eta.clone())
            }
            _ => Err(Error::semantic(
                "this command needs an explicit metric and eta; run `construct` for construction mode",
            )),
        }
    }

    /// The construction pipeline: certify Poisson, block-diagonalize,
    /// build (g, lambda, eta), localize, and verify the defining relation.
    pub fn run_construct(&self) -> Result<(KPCtx, MetricConstruction)> {
        self.certify_poisson()?;
        crate::fixtures::construct_kp(&self.ring, &self.table)
    }

    /// A fully verified KP context, through whichever route the config
    /// selects.
    pub fn verified_kp(&self) -> Result<KPCtx> {
        if self.construct {
            Ok(self.run_construct()?.0)
        } else {
            let g = self
                .metric
                .clone()
                .ok_or_else(|| Error::semantic("missing metric"))?;
            let eta = self
                .eta
                .clone()
                .ok_or_else(|| Error::semantic("missing eta"))?;
            KPCtx::new(self.ring.clone(), self.table.clone(), g, eta)
        }
    }
}
