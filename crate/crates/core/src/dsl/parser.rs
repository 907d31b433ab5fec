use std::collections::HashMap;

use super::ast::*;
use super::lexer::{lex, ParseError, Span, Tok};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sort {
    Ring,
    Prime,
    Module,
    Cf,
    Map,
    Family,
    RingOrModule,
    Int,
    Gens,
}

impl Sort {
    fn name(&self) -> &'static str {
        match self {
            Sort::Ring => "ring",
            Sort::Prime => "prime",
            Sort::Module => "module",
            Sort::Cf => "cf",
            Sort::Map => "map",
            Sort::Family => "family",
            Sort::RingOrModule => "ring or module",
            Sort::Int => "integer",
            Sort::Gens => "ideal",
        }
    }
}

/// Query keywords with their argument sorts; the flag allows one trailing
/// hypothesis word.
const QUERIES: &[(&str, &[Sort], bool)] = &[
    ("cosupp_member", &[Sort::Ring, Sort::Prime], false),
    ("cosupp_describe", &[Sort::Ring], false),
    ("supp", &[Sort::Module], false),
    ("cosupp_module", &[Sort::Module], false),
    ("cosupp_tensor", &[Sort::Module, Sort::RingOrModule], true),
    ("cosupp_kappa", &[Sort::Prime], false),
    ("cosupp_injective", &[Sort::Prime], false),
    ("cr_criterion", &[Sort::Ring], false),
    ("notclosed", &[Sort::Family, Sort::Int, Sort::Prime], false),
    ("cf_lambda", &[Sort::Cf, Sort::Prime], false),
    ("cf_colocalize", &[Sort::Cf, Sort::Prime], false),
    ("cf_basechange", &[Sort::Cf, Sort::Map], false),
    ("cf_minimal", &[Sort::Cf], false),
    ("cf_primes", &[Sort::Cf], false),
    ("gb", &[Sort::Ring, Sort::Gens], false),
    ("dim", &[Sort::Ring], false),
];

pub fn query_kinds() -> Vec<&'static str> {
    QUERIES.iter().map(|q| q.0).collect()
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    symbols: HashMap<String, &'static str>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(ParseError {
            span: self.span(),
            msg: format!("unexpected {}", self.peek()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == w)
    }

    fn sym(&mut self, s: &'static str) -> PResult<()> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            self.error(&[&format!("'{s}'")])
        }
    }

    fn word(&mut self, w: &str) -> PResult<()> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            self.error(&[&format!("'{w}'")])
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.span();
                self.bump();
                Ok((s, sp))
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn int(&mut self) -> PResult<u64> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let sp = self.span();
                self.bump();
                s.parse().map_err(|_| ParseError { span: sp, msg: format!("integer {s} is too large"), expected: Vec::new() })
            }
            _ => self.error(&["integer"]),
        }
    }

    fn signed(&mut self) -> PResult<i64> {
        let neg = self.is_sym("-");
        if neg {
            self.bump();
        }
        let sp = self.span();
        let n = self.int()?;
        let n: i64 = n.try_into().map_err(|_| ParseError { span: sp, msg: "degree out of range".into(), expected: Vec::new() })?;
        Ok(if neg { -n } else { n })
    }

    /// A declared name of one of the given kinds.
    fn reference(&mut self, kinds: &[&str]) -> PResult<String> {
        let (name, sp) = self.ident()?;
        match self.symbols.get(&name) {
            None => Err(ParseError { span: sp, msg: format!("undeclared identifier '{name}'"), expected: Vec::new() }),
            Some(k) if !kinds.contains(k) => Err(ParseError {
                span: sp,
                msg: format!("'{name}' is a {k}, expected a {}", kinds.join(" or ")),
                expected: Vec::new(),
            }),
            Some(_) => Ok(name),
        }
    }

    fn declare(&mut self, name: &str, span: Span, kind: &'static str) -> PResult<()> {
        if let Some(k) = self.symbols.get(name) {
            return Err(ParseError { span, msg: format!("'{name}' is already declared as a {k}"), expected: Vec::new() });
        }
        self.symbols.insert(name.to_string(), kind);
        Ok(())
    }

    /// A polynomial, read as tokens up to a top-level ',' or closing bracket.
    fn poly(&mut self) -> PResult<String> {
        let mut out = String::new();
        let mut depth = 0usize;
        let mut prev_operand = false;
        loop {
            match self.peek().clone() {
                Tok::Ident(s) | Tok::Int(s) => {
                    out.push_str(&s);
                    prev_operand = true;
                }
                Tok::Sym("(") => {
                    depth += 1;
                    out.push('(');
                    prev_operand = false;
                }
                Tok::Sym(")") if depth > 0 => {
                    depth -= 1;
                    out.push(')');
                    prev_operand = true;
                }
                Tok::Sym(s @ ("+" | "-")) => {
                    if prev_operand {
                        out.push_str(&format!(" {s} "));
                    } else {
                        out.push_str(s);
                    }
                    prev_operand = false;
                }
                Tok::Sym(s @ ("*" | "/" | "^")) => {
                    out.push_str(s);
                    prev_operand = false;
                }
                _ => break,
            }
            self.bump();
        }
        if out.is_empty() {
            return self.error(&["polynomial"]);
        }
        if depth > 0 {
            return self.error(&["')'"]);
        }
        Ok(out)
    }

    /// Comma-separated polynomials up to (not including) `close`.
    fn polylist(&mut self, close: &'static str) -> PResult<Vec<String>> {
        let mut v = Vec::new();
        if self.is_sym(close) {
            return Ok(v);
        }
        loop {
            v.push(self.poly()?);
            if self.is_sym(",") {
                self.bump();
            } else if self.is_sym(close) {
                return Ok(v);
            } else {
                return self.error(&["','", &format!("'{close}'")]);
            }
        }
    }

    fn gens(&mut self) -> PResult<Vec<String>> {
        self.sym("(")?;
        let g = self.polylist(")")?;
        self.sym(")")?;
        Ok(g)
    }

    fn vars(&mut self) -> PResult<Vec<String>> {
        let mut v = vec![self.ident()?.0];
        while self.is_sym(",") {
            self.bump();
            v.push(self.ident()?.0);
        }
        Ok(v)
    }

    fn ring_atom(&mut self) -> PResult<RingExpr> {
        let expected = ["Q", "Z", "F(p)", "field(...)", "powerseries(...)", "localize(...)", "'('", "ring name"];
        match self.peek().clone() {
            Tok::Ident(w) if w == "Q" => {
                self.bump();
                Ok(RingExpr::Q)
            }
            Tok::Ident(w) if w == "Z" => {
                self.bump();
                Ok(RingExpr::Z)
            }
            Tok::Ident(w) if w == "F" && *self.peek_at(1) == Tok::Sym("(") => {
                self.bump();
                self.sym("(")?;
                let p = self.int()?;
                self.sym(")")?;
                Ok(RingExpr::Fp(p))
            }
            Tok::Ident(w) if w == "field" && *self.peek_at(1) == Tok::Sym("(") => {
                self.bump();
                self.sym("(")?;
                let card = self.ident()?.0;
                let characteristic = if self.is_sym(",") {
                    self.bump();
                    Some(self.int()?)
                } else {
                    None
                };
                self.sym(")")?;
                Ok(RingExpr::Field { card, characteristic })
            }
            Tok::Ident(w) if w == "powerseries" && *self.peek_at(1) == Tok::Sym("(") => {
                self.bump();
                self.sym("(")?;
                let base = self.ring_expr()?;
                self.sym(",")?;
                let vars = self.vars()?;
                self.sym(")")?;
                Ok(RingExpr::Series(Box::new(base), vars))
            }
            Tok::Ident(w) if w == "localize" && *self.peek_at(1) == Tok::Sym("(") => {
                self.bump();
                self.sym("(")?;
                let base = self.ring_expr()?;
                self.sym(",")?;
                let at = if self.is_sym("(") { LocalizeAt::Gens(self.gens()?) } else { LocalizeAt::Prime(self.reference(&["prime"])?) };
                self.sym(")")?;
                Ok(RingExpr::Localize(Box::new(base), at))
            }
            Tok::Ident(_) => Ok(RingExpr::Ref(self.reference(&["ring"])?)),
            Tok::Sym("(") => {
                self.bump();
                let e = self.ring_expr()?;
                self.sym(")")?;
                Ok(e)
            }
            _ => self.error(&expected),
        }
    }

    fn ring_expr(&mut self) -> PResult<RingExpr> {
        let mut e = self.ring_atom()?;
        loop {
            if self.is_sym("[") && *self.peek_at(1) == Tok::Sym("[") {
                self.bump();
                self.bump();
                let v = self.vars()?;
                self.sym("]")?;
                self.sym("]")?;
                e = RingExpr::Series(Box::new(e), v);
            } else if self.is_sym("[") {
                self.bump();
                let v = self.vars()?;
                self.sym("]")?;
                e = RingExpr::Poly(Box::new(e), v);
            } else if self.is_sym("/") {
                self.bump();
                e = RingExpr::Quot(Box::new(e), self.gens()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn prime_lit(&mut self) -> PResult<PrimeLit> {
        if self.is_sym("(") {
            return Ok(PrimeLit::Gens(self.gens()?));
        }
        if self.is_word("max") {
            self.bump();
            return Ok(PrimeLit::Max(if self.is_sym("(") { self.gens()? } else { Vec::new() }));
        }
        if matches!(self.peek(), Tok::Ident(_)) {
            return Ok(PrimeLit::Ref(self.reference(&["prime"])?));
        }
        self.error(&["'('", "'max'", "prime name"])
    }

    fn card_lit(&mut self) -> PResult<CardLit> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(CardLit::Int(self.int()?)),
            Tok::Ident(w) if w == "inf" => {
                self.bump();
                Ok(CardLit::Inf)
            }
            Tok::Ident(w) => {
                self.bump();
                Ok(CardLit::Sym(w))
            }
            _ => self.error(&["integer", "'inf'", "symbolic cardinal"]),
        }
    }

    fn comps(&mut self) -> PResult<Vec<CompLit>> {
        self.sym("[")?;
        let mut v = Vec::new();
        if !self.is_sym("]") {
            loop {
                let prime = self.prime_lit()?;
                self.sym(":")?;
                let card = self.card_lit()?;
                v.push(CompLit { prime, card });
                if self.is_sym(",") {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.sym("]")?;
        Ok(v)
    }

    fn cf_body(&mut self) -> PResult<CfBody> {
        if self.is_word("module") {
            self.bump();
            return Ok(CfBody::Module(Vec::new()));
        }
        self.word("complex")?;
        Ok(CfBody::Complex { degrees: Vec::new(), entries: Vec::new(), semiflat: false, bounded: false })
    }

    fn decl(&mut self, kw: &str, kw_span: Span) -> PResult<Decl> {
        let (name, name_span) = self.ident()?;
        let d = match kw {
            "ring" => {
                self.sym("=")?;
                let expr = self.ring_expr()?;
                Decl::Ring { name: name.clone(), expr }
            }
            "prime" => {
                self.sym("=")?;
                let gens = self.gens()?;
                self.word("in")?;
                let ring = self.reference(&["ring"])?;
                let mut witness = None;
                let mut irreducible = false;
                if self.is_word("witness") {
                    self.bump();
                    self.sym("(")?;
                    let a = self.poly()?;
                    self.sym(",")?;
                    let b = self.poly()?;
                    self.sym(")")?;
                    witness = Some((a, b));
                }
                if self.is_word("irreducible") {
                    self.bump();
                    irreducible = true;
                }
                Decl::Prime { name: name.clone(), gens, ring, witness, irreducible }
            }
            "map" => {
                self.sym(":")?;
                let source = self.reference(&["ring"])?;
                self.sym("->")?;
                let target = self.reference(&["ring"])?;
                self.sym("=")?;
                self.sym("[")?;
                let images = self.polylist("]")?;
                self.sym("]")?;
                let finite = self.is_word("finite");
                if finite {
                    self.bump();
                }
                Decl::Map { name: name.clone(), source, target, images, finite }
            }
            "module" => {
                self.sym("=")?;
                self.word("coker")?;
                let ring = self.reference(&["ring"])?;
                self.sym("[")?;
                let mut matrix = Vec::new();
                if !self.is_sym("]") {
                    loop {
                        self.sym("[")?;
                        matrix.push(self.polylist("]")?);
                        self.sym("]")?;
                        if self.is_sym(",") {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.sym("]")?;
                let perfect = self.is_word("perfect");
                if perfect {
                    self.bump();
                }
                Decl::Module { name: name.clone(), ring, matrix, perfect }
            }
            "cf" => {
                self.sym("=")?;
                let body = self.cf_body()?;
                self.word("in")?;
                let ring = self.reference(&["ring"])?;
                let body = match body {
                    CfBody::Module(_) => CfBody::Module(self.comps()?),
                    CfBody::Complex { .. } => {
                        self.sym("{")?;
                        let (mut degrees, mut entries) = (Vec::new(), Vec::new());
                        while !self.is_sym("}") {
                            if self.is_word("d") {
                                self.bump();
                                let degree = self.signed()?;
                                self.sym(":")?;
                                let from = self.int()? as usize;
                                self.sym("->")?;
                                let to = self.int()? as usize;
                                let sp = self.span();
                                let (tag, _) = self.ident()?;
                                if crate::cotorsion::DiffTag::parse(&tag).is_none() {
                                    return Err(ParseError {
                                        span: sp,
                                        msg: format!("unknown differential tag '{tag}'"),
                                        expected: vec!["zero".into(), "nonzero_mod_p".into(), "zero_mod_p".into(), "unknown".into()],
                                    });
                                }
                                entries.push(EntryLit { degree, from, to, tag });
                            } else if matches!(self.peek(), Tok::Int(_) | Tok::Sym("-")) {
                                let d = self.signed()?;
                                self.sym(":")?;
                                degrees.push((d, self.comps()?));
                            } else {
                                return self.error(&["degree", "'d'", "'}'"]);
                            }
                            self.sym(";")?;
                        }
                        self.sym("}")?;
                        let (mut semiflat, mut bounded) = (false, false);
                        loop {
                            if self.is_word("semiflat") {
                                self.bump();
                                semiflat = true;
                            } else if self.is_word("bounded") {
                                self.bump();
                                bounded = true;
                            } else {
                                break;
                            }
                        }
                        CfBody::Complex { degrees, entries, semiflat, bounded }
                    }
                };
                Decl::Cf { name: name.clone(), ring, body }
            }
            "family" => {
                self.sym("=")?;
                self.sym("(")?;
                let gens = self.polylist(")")?;
                self.sym(")")?;
                self.word("index")?;
                let index = self.ident()?.0;
                self.word("in")?;
                let ring = self.reference(&["ring"])?;
                Decl::Family { name: name.clone(), gens, index, ring }
            }
            _ => unreachable!("{kw} at {kw_span}"),
        };
        self.sym(";")?;
        let kind = d.kind();
        self.declare(&name, name_span, kind)?;
        Ok(d)
    }

    fn query(&mut self) -> PResult<Query> {
        let sp = self.span();
        let (kind, _) = self.ident()?;
        let Some((_, sorts, trailing)) = QUERIES.iter().find(|q| q.0 == kind) else {
            return Err(ParseError { span: sp, msg: format!("unknown query '{kind}'"), expected: query_kinds().iter().map(|s| s.to_string()).collect() });
        };
        let mut args = Vec::new();
        for sort in sorts.iter() {
            let arg = match sort {
                Sort::Int => Arg::Int(self.int()?),
                Sort::Gens => Arg::Gens(self.gens()?),
                Sort::RingOrModule => Arg::Id(self.reference(&["ring", "module"])?),
                s if self.is_sym(";") => {
                    return Err(ParseError {
                        span: self.span(),
                        msg: format!("query '{kind}' takes {} argument(s)", sorts.len()),
                        expected: vec![s.name().to_string()],
                    })
                }
                s => Arg::Id(self.reference(&[s.name()])?),
            };
            args.push(arg);
        }
        if *trailing && matches!(self.peek(), Tok::Ident(_)) {
            args.push(Arg::Id(self.ident()?.0));
        }
        if !self.is_sym(";") {
            return Err(ParseError { span: self.span(), msg: format!("too many arguments for '{kind}'"), expected: vec!["';'".into()] });
        }
        self.bump();
        Ok(Query { kind, args })
    }
}

/// Parses a program. Names are resolved against `known` (kind per name)
/// in addition to the program's own declarations.
pub fn parse_with(text: &str, known: &HashMap<String, &'static str>) -> Result<Program, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, symbols: known.clone() };
    let mut items = Vec::new();
    loop {
        let sp = p.span();
        match p.peek().clone() {
            Tok::Eof => break,
            Tok::Ident(w) if ["ring", "prime", "map", "module", "cf", "family"].contains(&w.as_str()) => {
                p.bump();
                items.push((Item::Decl(p.decl(&w, sp)?), sp));
            }
            Tok::Ident(w) if w == "query" => {
                p.bump();
                items.push((Item::Query(p.query()?), sp));
            }
            _ => return p.error(&["'ring'", "'prime'", "'map'", "'module'", "'cf'", "'family'", "'query'"]),
        }
    }
    Ok(Program { items })
}

pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    parse_with(text, &HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_items() {
        let p = parse_program("ring R = Q[x,y]; prime p = (x) in R; query cosupp_member R p;").unwrap();
        assert_eq!(p.items.len(), 3);
    }

    #[test]
    fn power_series_forms() {
        let p = parse_program("ring S = powerseries(F(2)[x], t);").unwrap();
        let Item::Decl(Decl::Ring { expr, .. }) = &p.items[0].0 else { panic!() };
        assert_eq!(*expr, RingExpr::Series(Box::new(RingExpr::Poly(Box::new(RingExpr::Fp(2)), vec!["x".into()])), vec!["t".into()]));
        let q = parse_program("ring S = F(2)[x][[t]];").unwrap();
        assert!(p.same_structure(&q));
    }

    #[test]
    fn syntax_error_has_location_and_expected_set() {
        let e = parse_program("ring T = Q[x,").unwrap_err();
        assert_eq!(e.span.line, 1);
        assert!(e.expected.contains(&"identifier".to_string()), "{e}");
    }

    #[test]
    fn semantic_errors() {
        let e = parse_program("query dim R;").unwrap_err();
        assert!(e.msg.contains("undeclared"), "{e}");
        let e = parse_program("ring R = Q[x]; ring R = Q;").unwrap_err();
        assert!(e.msg.contains("already declared"));
        let e = parse_program("ring R = Q[x]; query cosupp_member R;").unwrap_err();
        assert!(e.msg.contains("takes 2"), "{e}");
        let e = parse_program("ring R = Q[x]; prime p = (x) in R; query cosupp_member p R;").unwrap_err();
        assert!(e.msg.contains("expected a ring"), "{e}");
    }

    #[test]
    fn round_trip() {
        let src = "ring R = Q[x,y] / (y^2 - x^3);\n\
                   ring T = F(2)[[t]][x];\n\
                   ring L = localize(Q[x], (x));\n\
                   prime m = (x, y) in R witness (x, y) irreducible;\n\
                   map f : R -> R = [x, y] finite;\n\
                   module M = coker R [[x, y], [-y, x]] perfect;\n\
                   family P = (1 - x*t^n) index n in T;\n\
                   cf B = complex in R { 0: [max: 1, m: inf]; 1: [(0): X]; d 0: 1 -> 0 zero; } semiflat bounded;\n\
                   cf C = module in R [(x): 2];\n\
                   query notclosed P 4 m;\n\
                   query gb R (x^2, -x*y + 1/2);\n\
                   query cosupp_tensor M R perfect;";
        let p = parse_program(src).unwrap();
        let printed = p.to_string();
        let q = parse_program(&printed).unwrap();
        assert!(p.same_structure(&q), "{printed}");
        assert_eq!(q.to_string(), printed);
    }
}
