use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::ast::*;
use super::lexer::Span;
use crate::cotorsion::{
    cf_basechange, cf_completion, cf_colocalize, cf_is_minimal, cf_primes, CFComplex, CFModule, CardTag, CfError, CfPrime, Component,
    DiffEntry, DiffTag,
};
use crate::engine::{notclosed_witness, Engine, EngineError, EngineOptions, Frontier, PrimeFamily, Step};
use crate::kernel::{Ideal, MonomialOrder, Poly};
use crate::ring::{Cardinality, PrimeId, Ring, RingDesc, RingError, RingMap, RingMapKind, Tri};
use crate::specset::SpecSet;

pub const SCHEMA: &str = "cosupp/1";

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub engine: EngineOptions,
    pub order: MonomialOrder,
    pub trace: bool,
    /// Adds wall-clock timings, which makes reports non-reproducible.
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Yes,
    No,
    Unknown,
    Ok,
    Failed,
    Error,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Unknown => "unknown",
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Error => "error",
        }
    }

    fn of(t: &Tri) -> Status {
        match t.value() {
            Some(true) => Status::Yes,
            Some(false) => Status::No,
            None => Status::Unknown,
        }
    }
}

#[derive(Clone, Debug)]
pub struct QueryResult {
    pub index: usize,
    pub query: String,
    pub kind: String,
    pub span: Span,
    pub status: Status,
    /// Result fields, merged into the JSON object.
    pub fields: Map<String, Value>,
    pub millis: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Diagnostic {
    pub span: Span,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub options: RunOptions,
    pub results: Vec<QueryResult>,
    /// Declaration errors.
    pub diagnostics: Vec<Diagnostic>,
}

impl Report {
    pub fn errors(&self) -> usize {
        self.diagnostics.len() + self.results.iter().filter(|r| r.status == Status::Error).count()
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.errors() > 0)
    }

    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .results
            .iter()
            .map(|r| {
                let mut o = r.fields.clone();
                o.insert("index".into(), json!(r.index));
                o.insert("query".into(), json!(r.query));
                o.insert("kind".into(), json!(r.kind));
                o.insert("line".into(), json!(r.span.line));
                o.insert("status".into(), json!(r.status.name()));
                if let Some(ms) = r.millis {
                    o.insert("timing_ms".into(), json!(ms));
                }
                Value::Object(o)
            })
            .collect();
        let diagnostics: Vec<Value> =
            self.diagnostics.iter().map(|d| json!({"line": d.span.line, "column": d.span.col, "message": d.message})).collect();
        json!({
            "schema": SCHEMA,
            "options": {
                "assume_gruson_jensen": self.options.engine.assume_gruson_jensen,
                "max_steps": self.options.engine.max_steps,
                "order": self.options.order.name(),
                "trace": self.options.trace,
            },
            "results": results,
            "diagnostics": diagnostics,
            "errors": self.errors(),
        })
    }

    /// Pretty-printed JSON with sorted keys and a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.diagnostics {
            out.push_str(&format!("error at {}: {}\n", d.span, d.message));
        }
        for r in &self.results {
            out.push_str(&format!("[{}] {}\n  status: {}\n", r.index, r.query, r.status.name()));
            for (k, v) in &r.fields {
                if k == "trace" {
                    continue;
                }
                let v = match v {
                    Value::String(s) => s.clone(),
                    v => v.to_string(),
                };
                out.push_str(&format!("  {k}: {v}\n"));
            }
            if let Some(Value::Array(steps)) = r.fields.get("trace") {
                out.push_str("  trace:\n");
                for s in steps {
                    out.push_str(&format!(
                        "    {} {}: {}\n",
                        s["rule_id"].as_str().unwrap_or(""),
                        s["subject"].as_str().unwrap_or(""),
                        s["conclusion"].as_str().unwrap_or("")
                    ));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub enum Cf {
    Module(CFModule),
    Complex(CFComplex),
}

#[derive(Clone, Debug)]
pub enum Symbol {
    Ring(Ring),
    Prime(PrimeId),
    Map(RingMap),
    Module { ring: Ring, pres: Vec<Vec<Poly>>, perfect: bool },
    Cf(Cf),
    Family(PrimeFamily),
    /// The declaration could not be built.
    Failed { kind: &'static str, why: String },
}

impl Symbol {
    pub fn kind(&self) -> &'static str {
        match self {
            Symbol::Ring(_) => "ring",
            Symbol::Prime(_) => "prime",
            Symbol::Map(_) => "map",
            Symbol::Module { .. } => "module",
            Symbol::Cf(_) => "cf",
            Symbol::Family(_) => "family",
            Symbol::Failed { kind, .. } => kind,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum QueryError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("{0}")]
    Invalid(String),
}

impl From<RingError> for QueryError {
    fn from(e: RingError) -> Self {
        QueryError::Engine(e.into())
    }
}

impl From<CfError> for QueryError {
    fn from(e: CfError) -> Self {
        QueryError::Engine(e.into())
    }
}

impl From<crate::kernel::KernelError> for QueryError {
    fn from(e: crate::kernel::KernelError) -> Self {
        QueryError::Engine(e.into())
    }
}

type QResult<T> = Result<T, QueryError>;

fn invalid<T>(msg: impl Into<String>) -> QResult<T> {
    Err(QueryError::Invalid(msg.into()))
}

/// Declared symbols plus the engine they are registered with. Persists
/// across REPL inputs.
pub struct Session {
    pub options: RunOptions,
    pub engine: Engine,
    symbols: HashMap<String, Symbol>,
}

fn parse_in(desc: &RingDesc, texts: &[String]) -> Result<Vec<Poly>, RingError> {
    let amb = desc.ambient()?;
    Ok(texts.iter().map(|t| amb.parse(t)).collect::<Result<Vec<_>, _>>()?)
}

fn parse_ring(ring: &Ring, texts: &[String]) -> Result<Vec<Poly>, RingError> {
    texts.iter().map(|t| ring.parse(t)).collect()
}

impl Session {
    pub fn new(options: RunOptions) -> Session {
        let engine = Engine::new(options.engine.clone());
        Session { options, engine, symbols: HashMap::new() }
    }

    /// Kinds of the declared names, for resolving references while parsing.
    pub fn known(&self) -> HashMap<String, &'static str> {
        self.symbols
            .iter()
            .map(|(k, v)| (k.clone(), v.kind()))
            .collect()
    }

    pub fn symbol(&self, name: &str) -> Option<&Symbol> {
        self.symbols.get(name)
    }

    fn get(&self, name: &str) -> QResult<&Symbol> {
        match self.symbols.get(name) {
            Some(Symbol::Failed { why, .. }) => invalid(format!("'{name}' is unavailable: {why}")),
            Some(s) => Ok(s),
            None => invalid(format!("undeclared identifier '{name}'")),
        }
    }

    fn ring(&self, name: &str) -> QResult<Ring> {
        match self.get(name)? {
            Symbol::Ring(r) => Ok(r.clone()),
            s => invalid(format!("'{name}' is a {}, expected a ring", s.kind())),
        }
    }

    fn prime(&self, name: &str) -> QResult<PrimeId> {
        match self.get(name)? {
            Symbol::Prime(p) => Ok(p.clone()),
            s => invalid(format!("'{name}' is a {}, expected a prime", s.kind())),
        }
    }

    fn prime_in(&self, name: &str, ring: &Ring) -> QResult<PrimeId> {
        let p = self.prime(name)?;
        if p.ring != *ring {
            return invalid(format!("prime '{name}' lives in {}, not {ring}", p.ring));
        }
        Ok(p)
    }

    fn ring_desc(&self, e: &RingExpr) -> QResult<RingDesc> {
        Ok(match e {
            RingExpr::Q => RingDesc::rationals(),
            RingExpr::Fp(p) => RingDesc::prime_field(*p)?,
            RingExpr::Z => RingDesc::Integers,
            RingExpr::Field { card, characteristic } => {
                let Some(c) = Cardinality::parse(card) else {
                    return invalid(format!("unknown cardinality '{card}' (use finite, countable, uncountable or unknown)"));
                };
                RingDesc::abstract_field(c, characteristic.unwrap_or(0))?
            }
            RingExpr::Ref(name) => self.ring(name)?.desc().clone(),
            RingExpr::Poly(b, vars) => {
                let v: Vec<&str> = vars.iter().map(String::as_str).collect();
                self.ring_desc(b)?.poly(&v)?
            }
            RingExpr::Series(b, vars) => {
                let v: Vec<&str> = vars.iter().map(String::as_str).collect();
                self.ring_desc(b)?.power_series(&v)?
            }
            RingExpr::Quot(b, gens) => {
                let base = self.ring_desc(b)?;
                let rel = parse_in(&base, gens)?;
                base.quotient_by(rel, false)?
            }
            RingExpr::Localize(b, at) => {
                let base = self.ring_desc(b)?;
                let gens = match at {
                    LocalizeAt::Gens(g) => parse_in(&base, g)?,
                    LocalizeAt::Prime(name) => {
                        let p = self.prime(name)?;
                        if *p.ring.desc() != base {
                            return invalid(format!("prime '{name}' lives in {}, not {base}", p.ring));
                        }
                        p.gens.clone()
                    }
                };
                base.localize_by(gens)?
            }
        })
    }

    fn cf_prime(&self, ring: &Ring, lit: &PrimeLit) -> QResult<CfPrime> {
        Ok(match lit {
            PrimeLit::Ref(name) => CfPrime::Explicit(self.prime_in(name, ring)?),
            PrimeLit::Gens(g) => {
                let mut p = PrimeId::new(ring, parse_ring(ring, g)?)?;
                if ring.is_computable() {
                    p.apply_check(None, false)?;
                    p.ensure_usable()?;
                }
                CfPrime::Explicit(p)
            }
            PrimeLit::Max(g) => CfPrime::MaximalAbove(parse_ring(ring, g)?),
        })
    }

    fn cf_module(&self, ring: &Ring, comps: &[CompLit]) -> QResult<CFModule> {
        let mut out = Vec::new();
        for c in comps {
            let card = match &c.card {
                CardLit::Int(0) => CardTag::Zero,
                CardLit::Int(n) => CardTag::Finite(*n),
                CardLit::Inf => CardTag::CountablyInfinite,
                CardLit::Sym(s) => CardTag::Symbolic(s.clone()),
            };
            out.push(Component { prime: self.cf_prime(ring, &c.prime)?, card });
        }
        Ok(CFModule::new(ring, out)?)
    }

    fn build(&mut self, d: &Decl) -> QResult<Symbol> {
        Ok(match d {
            Decl::Ring { expr, .. } => Symbol::Ring(Ring::new(self.ring_desc(expr)?)?),
            Decl::Prime { name, gens, ring, witness, irreducible } => {
                let r = self.ring(ring)?;
                let mut p = PrimeId::new(&r, parse_ring(&r, gens)?)?.named(name);
                let w = match witness {
                    Some((a, b)) => Some((r.parse(a)?, r.parse(b)?)),
                    None => None,
                };
                p.apply_check(w, *irreducible)?;
                p.ensure_usable()?;
                self.engine.register_prime(p.clone());
                Symbol::Prime(p)
            }
            Decl::Map { source, target, images, finite, .. } => {
                let (s, t) = (self.ring(source)?, self.ring(target)?);
                let imgs = parse_ring(&t, images)?;
                let identity = imgs.len() == s.ambient().nvars()
                    && s.ambient().vars() == t.ambient().vars()
                    && imgs.iter().enumerate().all(|(i, f)| *f == t.ambient().var(i));
                let map = match t.desc() {
                    RingDesc::Quotient { base, relations, .. } if **base == *s.desc() && identity => {
                        RingMap { source: s, target: t.clone(), kind: RingMapKind::QuotientProjection { kernel: relations.clone() } }
                    }
                    _ => RingMap::finite(&s, &t, imgs, *finite)?,
                };
                self.engine.register_map(map.clone());
                Symbol::Map(map)
            }
            Decl::Module { ring, matrix, perfect, .. } => {
                let r = self.ring(ring)?;
                let pres = matrix.iter().map(|row| parse_ring(&r, row)).collect::<Result<Vec<_>, _>>()?;
                let width = pres.first().map_or(0, Vec::len);
                if pres.iter().any(|row| row.len() != width) {
                    return invalid("presentation rows have different lengths");
                }
                Symbol::Module { ring: r, pres, perfect: *perfect }
            }
            Decl::Cf { ring, body, .. } => {
                let r = self.ring(ring)?;
                match body {
                    CfBody::Module(c) => Symbol::Cf(Cf::Module(self.cf_module(&r, c)?)),
                    CfBody::Complex { degrees, entries, semiflat, bounded } => {
                        let mut degrees = degrees.clone();
                        degrees.sort_by_key(|(d, _)| *d);
                        if degrees.windows(2).any(|w| w[0].0 == w[1].0) {
                            return invalid("a degree is given twice");
                        }
                        let start = degrees.first().map_or(0, |(d, _)| *d);
                        let end = degrees.last().map_or(-1, |(d, _)| *d);
                        let mut modules = Vec::new();
                        for k in start..=end {
                            modules.push(match degrees.iter().find(|(d, _)| *d == k) {
                                Some((_, c)) => self.cf_module(&r, c)?,
                                None => CFModule::zero(&r),
                            });
                        }
                        let entries = entries
                            .iter()
                            .map(|e| DiffEntry { degree: e.degree, from: e.from, to: e.to, tag: DiffTag::parse(&e.tag).unwrap_or(DiffTag::Unknown) })
                            .collect();
                        let sf = if *semiflat { Tri::yes().because("asserted") } else { Tri::unknown("semiflatness not asserted") };
                        Symbol::Cf(Cf::Complex(CFComplex::new(&r, start, modules, entries, sf, *bounded)?))
                    }
                }
            }
            Decl::Family { name, gens, index, ring } => {
                let r = self.ring(ring)?;
                let fam = PrimeFamily { name: name.clone(), ring: r, index: index.clone(), templates: gens.clone() };
                fam.member(1)?;
                self.engine.register_family(fam.clone());
                Symbol::Family(fam)
            }
        })
    }

    /// Builds one declaration; failures are recorded so later references
    /// report them.
    pub fn declare(&mut self, d: &Decl) -> Result<(), String> {
        let res = self.build(d);
        match res {
            Ok(s) => {
                self.symbols.insert(d.name().to_string(), s);
                Ok(())
            }
            Err(e) => {
                let msg = format!("{} '{}': {e}", d.kind(), d.name());
                self.symbols.insert(d.name().to_string(), Symbol::Failed { kind: d.kind(), why: e.to_string() });
                Err(msg)
            }
        }
    }

    /// Runs declarations in order, then queries in parallel, each against
    /// its own fork of the engine.
    pub fn run(&mut self, program: &Program) -> Report {
        let mut diagnostics = Vec::new();
        let mut queries = Vec::new();
        for (item, span) in &program.items {
            match item {
                Item::Decl(d) => {
                    if let Err(message) = self.declare(d) {
                        diagnostics.push(Diagnostic { span: *span, message });
                    }
                }
                Item::Query(q) => queries.push((q.clone(), *span)),
            }
        }
        let this = &*self;
        let results = queries.par_iter().enumerate().map(|(i, (q, span))| this.run_query(i, q, *span)).collect();
        Report { options: self.options.clone(), results, diagnostics }
    }

    fn run_query(&self, index: usize, q: &Query, span: Span) -> QueryResult {
        let engine = self.engine.fork();
        let start = Instant::now();
        let mut fields = Map::new();
        let status = match self.answer(&engine, q, &mut fields) {
            Ok(s) => s,
            Err(QueryError::Engine(EngineError::Unknown(reason))) => {
                fields.insert("frontier".into(), json!([{"rule_id": rule_for(&q.kind), "reason": reason}]));
                Status::Unknown
            }
            Err(e) => {
                fields.clear();
                fields.insert("error".into(), json!(e.to_string()));
                Status::Error
            }
        };
        let millis = self.options.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
        let query = q.to_string();
        let query = query.trim_start_matches("query ").trim_end_matches(';').to_string();
        QueryResult { index, query, kind: q.kind.clone(), span, status, fields, millis }
    }

    fn id<'a>(&self, q: &'a Query, i: usize) -> &'a str {
        match &q.args[i] {
            Arg::Id(s) => s,
            _ => "",
        }
    }

    fn module(&self, name: &str) -> QResult<(Ring, Vec<Vec<Poly>>, bool)> {
        match self.get(name)? {
            Symbol::Module { ring, pres, perfect } => Ok((ring.clone(), pres.clone(), *perfect)),
            s => invalid(format!("'{name}' is a {}, expected a module", s.kind())),
        }
    }

    fn cf(&self, name: &str) -> QResult<Cf> {
        match self.get(name)? {
            Symbol::Cf(c) => Ok(c.clone()),
            s => invalid(format!("'{name}' is a {}, expected a cf", s.kind())),
        }
    }

    fn cf_module_of(&self, name: &str) -> QResult<CFModule> {
        match self.cf(name)? {
            Cf::Module(m) => Ok(m),
            Cf::Complex(_) => invalid(format!("'{name}' is a complex; this query takes a single module")),
        }
    }

    fn cf_complex_of(&self, name: &str) -> QResult<CFComplex> {
        Ok(match self.cf(name)? {
            Cf::Module(m) => CFComplex::single(m),
            Cf::Complex(c) => c,
        })
    }

    fn put_trace(&self, fields: &mut Map<String, Value>, trace: &[Step]) {
        if self.options.trace {
            fields.insert("trace".into(), Value::Array(trace.iter().map(step_json).collect()));
        }
    }

    fn answer(&self, engine: &Engine, q: &Query, fields: &mut Map<String, Value>) -> QResult<Status> {
        match q.kind.as_str() {
            "cosupp_member" => {
                let r = self.ring(self.id(q, 0))?;
                let p = self.prime_in(self.id(q, 1), &r)?;
                let m = engine.member(&p)?;
                fields.insert("verdict".into(), json!(word(&m.verdict)));
                if let Some(why) = m.verdict.reason() {
                    fields.insert("reason".into(), json!(why));
                }
                fields.insert("assumptions".into(), json!(m.assumptions));
                fields.insert("conjecture".into(), json!(m.uses_conjecture()));
                if m.verdict.is_unknown() {
                    fields.insert("frontier".into(), frontier_json(&m.frontier));
                }
                self.put_trace(fields, &m.trace);
                Ok(Status::of(&m.verdict))
            }
            "cosupp_describe" => {
                let r = self.ring(self.id(q, 0))?;
                let d = engine.describe(&r)?;
                let (closed, ideal) = d.set.is_closed(&r)?;
                fields.insert("set".into(), specset_json(&d.set));
                fields.insert("exact".into(), json!(word(&d.exact)));
                fields.insert("closed".into(), json!(word(&closed)));
                if let Some(i) = ideal {
                    fields.insert("closed_ideal".into(), polys_json(&i));
                }
                if !d.exact.is_true() {
                    let mut f = d.frontier.clone();
                    if f.is_empty() {
                        f.push(Frontier { rule_id: "DESCRIBE-PROBE".into(), reason: d.exact.reason().unwrap_or("not exact").into() });
                    }
                    fields.insert("frontier".into(), frontier_json(&f));
                }
                self.put_trace(fields, &d.trace);
                Ok(if d.exact.is_true() { Status::Ok } else { Status::Unknown })
            }
            "supp" => {
                let (r, pres, _) = self.module(self.id(q, 0))?;
                let res = engine.supp_module(&r, &pres)?;
                fields.insert("set".into(), specset_json(&res.set));
                self.put_trace(fields, &res.trace);
                Ok(Status::Ok)
            }
            "cosupp_module" => {
                let (r, pres, perfect) = self.module(self.id(q, 0))?;
                let res = engine.cosupp_module(&r, &pres, perfect)?;
                fields.insert("set".into(), specset_json(&res.set));
                fields.insert("assumptions".into(), json!(res.assumptions));
                self.put_trace(fields, &res.trace);
                Ok(Status::Ok)
            }
            "cosupp_tensor" => {
                let (r, pres, _) = self.module(self.id(q, 0))?;
                let yname = self.id(q, 1);
                let y = match self.get(yname)? {
                    Symbol::Ring(yr) => {
                        if *yr != r {
                            return invalid(format!("'{yname}' is {yr}, not the module's ring {r}"));
                        }
                        engine.describe(&r)?.set
                    }
                    _ => {
                        let (yr, ypres, yperfect) = self.module(yname)?;
                        if yr != r {
                            return invalid(format!("modules over different rings {r} and {yr}"));
                        }
                        engine.cosupp_module(&r, &ypres, yperfect)?.set
                    }
                };
                let asserted = q.args.get(2).map(|_| self.id(q, 2));
                let res = engine.cosupp_tensor(&r, &pres, &y, asserted)?;
                fields.insert("set".into(), specset_json(&res.set));
                fields.insert("assumptions".into(), json!(res.assumptions));
                self.put_trace(fields, &res.trace);
                Ok(Status::Ok)
            }
            "cosupp_kappa" | "cosupp_injective" => {
                let p = self.prime(self.id(q, 0))?;
                let res = if q.kind == "cosupp_kappa" { engine.cosupp_kappa(&p)? } else { engine.cosupp_injective(&p)? };
                fields.insert("set".into(), specset_json(&res.set));
                self.put_trace(fields, &res.trace);
                Ok(Status::Ok)
            }
            "cr_criterion" => {
                let r = self.ring(self.id(q, 0))?;
                let c = engine.cr_criterion(&r)?;
                fields.insert("verdict".into(), json!(word(&c.value)));
                if let Some(why) = c.value.reason() {
                    fields.insert("reason".into(), json!(why));
                }
                if let Some(w) = &c.witness {
                    fields.insert("witness".into(), json!(w.to_string()));
                }
                if c.value.is_unknown() {
                    fields.insert("frontier".into(), json!([{"rule_id": "DESCRIBE-CLOSED", "reason": c.value.reason().unwrap_or("")}]));
                }
                self.put_trace(fields, &c.trace);
                Ok(Status::of(&c.value))
            }
            "notclosed" => {
                let fname = self.id(q, 0);
                let fam = match self.get(fname)? {
                    Symbol::Family(f) => f.clone(),
                    s => return invalid(format!("'{fname}' is a {}, expected a family", s.kind())),
                };
                let Arg::Int(n) = q.args[1] else { return invalid("notclosed needs a member count") };
                let p = self.prime_in(self.id(q, 2), &fam.ring)?;
                match notclosed_witness(engine, &fam, n, &p)? {
                    Ok(cert) => {
                        fields.insert("certificate".into(), certificate_json(&cert));
                        Ok(Status::Ok)
                    }
                    Err(f) => {
                        fields.insert("failed_step".into(), json!(f.step));
                        fields.insert("reason".into(), json!(f.reason));
                        Ok(Status::Failed)
                    }
                }
            }
            "cf_lambda" | "cf_colocalize" => {
                let t = self.cf_module_of(self.id(q, 0))?;
                let p = self.prime_in(self.id(q, 1), &t.ring)?;
                let out = if q.kind == "cf_lambda" { cf_completion(&t, &p)? } else { cf_colocalize(&t, &p)? };
                fields.insert("module".into(), cf_module_json(&out));
                Ok(Status::Ok)
            }
            "cf_basechange" => {
                let t = self.cf_module_of(self.id(q, 0))?;
                let mname = self.id(q, 1);
                let f = match self.get(mname)? {
                    Symbol::Map(m) => m.clone(),
                    s => return invalid(format!("'{mname}' is a {}, expected a map", s.kind())),
                };
                fields.insert("module".into(), cf_module_json(&cf_basechange(&t, &f, None)?));
                Ok(Status::Ok)
            }
            "cf_minimal" => {
                let b = self.cf_complex_of(self.id(q, 0))?;
                let t = cf_is_minimal(&b)?;
                fields.insert("verdict".into(), json!(word(&t)));
                if let Some(why) = t.reason() {
                    fields.insert("reason".into(), json!(why));
                }
                if t.is_unknown() {
                    fields.insert("frontier".into(), json!([{"rule_id": "cf_minimal", "reason": t.reason().unwrap_or("")}]));
                }
                Ok(Status::of(&t))
            }
            "cf_primes" => {
                let b = self.cf_complex_of(self.id(q, 0))?;
                let ps = cf_primes(&b)?;
                fields.insert("primes".into(), json!(ps.primes.iter().map(|p| p.to_string()).collect::<Vec<_>>()));
                fields.insert(
                    "maximal_families".into(),
                    json!(ps.families.iter().map(|i| CfPrime::MaximalAbove(i.clone()).to_string()).collect::<Vec<_>>()),
                );
                fields.insert("equals_cosupport".into(), json!(word(&ps.equals_cosupport)));
                fields.insert("checks".into(), json!(ps.checks));
                fields.insert("set".into(), specset_json(&ps.as_specset(&b.ring)?));
                Ok(Status::Ok)
            }
            "gb" => {
                let r = self.ring(self.id(q, 0))?;
                let Arg::Gens(g) = &q.args[1] else { return invalid("gb needs an ideal") };
                if !r.is_computable() {
                    return invalid(format!("{r} has no computable model"));
                }
                let mut gens = parse_ring(&r, g)?;
                gens.extend(r.model().relations.iter().cloned());
                let basis = engine.budget(|| Ideal::buchberger(r.ambient(), gens, &self.options.order))?;
                let mut basis: Vec<Poly> = basis.groebner(&self.options.order)?.iter().cloned().collect();
                basis.sort_by(|a, b| {
                    let (la, lb) = (a.leading_monomial(&self.options.order), b.leading_monomial(&self.options.order));
                    match (la, lb) {
                        (Some(x), Some(y)) => self.options.order.cmp(x, y),
                        _ => std::cmp::Ordering::Equal,
                    }
                });
                fields.insert("order".into(), json!(self.options.order.name()));
                fields.insert("ambient".into(), json!(r.ambient().vars()));
                fields.insert("basis".into(), Value::Array(basis.iter().map(|p| json!(p.to_string())).collect()));
                Ok(Status::Ok)
            }
            "dim" => {
                let r = self.ring(self.id(q, 0))?;
                let a = r.attrs()?;
                fields.insert("krull_dim".into(), json!({"lo": a.krull_dim.lo, "hi": a.krull_dim.hi}));
                fields.insert(
                    "attrs".into(),
                    json!({
                        "countable": word(&a.countable),
                        "domain": word(&a.is_domain),
                        "field": word(&a.is_field),
                        "local": word(&a.is_local),
                        "c_known": polys_json(&a.c_known),
                        "c_exact": word(&a.c_exact),
                    }),
                );
                fields.insert("notes".into(), json!(a.notes));
                Ok(Status::Ok)
            }
            other => invalid(format!("unknown query '{other}'")),
        }
    }
}

fn word(t: &Tri) -> &'static str {
    match t.value() {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}

fn rule_for(kind: &str) -> &'static str {
    match kind {
        "cosupp_module" => "COSUPP-MODULE",
        "cosupp_tensor" => "COSUPP-TENSOR",
        "cosupp_kappa" => "COSUPP-KAPPA",
        "cosupp_injective" => "COSUPP-INJECTIVE",
        "supp" => "SUPP-FITTING",
        "notclosed" => "NOTCLOSED",
        "cosupp_describe" => "DESCRIBE-PROBE",
        _ => "engine",
    }
}

fn polys_json(ps: &[Poly]) -> Value {
    Value::Array(ps.iter().map(|p| json!(p.to_string())).collect())
}

fn primes_json(ps: &[PrimeId]) -> Value {
    Value::Array(ps.iter().map(|p| json!(p.to_string())).collect())
}

fn frontier_json(f: &[Frontier]) -> Value {
    Value::Array(f.iter().map(|f| json!({"rule_id": f.rule_id, "reason": f.reason})).collect())
}

pub fn step_json(s: &Step) -> Value {
    json!({
        "rule_id": s.rule_id,
        "paper_anchor": s.paper_anchor,
        "subject": s.subject,
        "conclusion": s.conclusion,
        "premises": s.premises.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "assumptions": s.assumptions,
        "conjecture": s.conjecture,
    })
}

fn certificate_json(c: &crate::specset::NotClosed) -> Value {
    json!({
        "ring": c.ring,
        "family": c.family,
        "members": primes_json(&c.members),
        "no_prime": c.no_prime.to_string(),
        "checked": c.checked,
        "trusted": c.trusted,
    })
}

pub fn specset_json(s: &SpecSet) -> Value {
    let mut o = Map::new();
    o.insert("kind".into(), json!(s.kind()));
    o.insert("display".into(), json!(s.to_string()));
    match s {
        SpecSet::Full | SpecSet::Empty => {}
        SpecSet::ClosedV(g) => {
            o.insert("ideal".into(), polys_json(g));
        }
        SpecSet::FiniteSet(ps) => {
            o.insert("primes".into(), primes_json(ps));
        }
        SpecSet::DownSet(p) => {
            o.insert("prime".into(), json!(p.to_string()));
        }
        SpecSet::Pullback { map, inner } => {
            o.insert("map".into(), json!(format!("{} -> {}", map.source, map.target)));
            o.insert("inner".into(), specset_json(inner));
        }
        SpecSet::Intersect(parts) => {
            o.insert("parts".into(), Value::Array(parts.iter().map(specset_json).collect()));
        }
        SpecSet::Partial { yes, no, notes, certificate } => {
            o.insert("yes".into(), primes_json(yes));
            o.insert("no".into(), primes_json(no));
            o.insert("notes".into(), json!(notes));
            if let Some(c) = certificate {
                o.insert("certificate".into(), certificate_json(c));
            }
        }
    }
    Value::Object(o)
}

pub fn cf_module_json(m: &CFModule) -> Value {
    json!({
        "ring": m.ring.to_string(),
        "components": m.components.iter().map(|c| json!({"prime": c.prime.to_string(), "card": c.card.to_string()})).collect::<Vec<_>>(),
    })
}

pub fn run_program(program: &Program, options: RunOptions) -> Report {
    Session::new(options).run(program)
}
