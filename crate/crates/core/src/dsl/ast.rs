use std::fmt;

use super::lexer::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Q,
    Fp(u64),
    Z,
    Field { card: String, characteristic: Option<u64> },
    Ref(String),
    Poly(Box<RingExpr>, Vec<String>),
    Series(Box<RingExpr>, Vec<String>),
    Quot(Box<RingExpr>, Vec<String>),
    Localize(Box<RingExpr>, LocalizeAt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalizeAt {
    Prime(String),
    Gens(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeLit {
    Ref(String),
    Gens(Vec<String>),
    /// All maximal ideals containing the given ideal.
    Max(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CardLit {
    Int(u64),
    Inf,
    Sym(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompLit {
    pub prime: PrimeLit,
    pub card: CardLit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryLit {
    pub degree: i64,
    pub from: usize,
    pub to: usize,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CfBody {
    Module(Vec<CompLit>),
    Complex { degrees: Vec<(i64, Vec<CompLit>)>, entries: Vec<EntryLit>, semiflat: bool, bounded: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Ring { name: String, expr: RingExpr },
    Prime { name: String, gens: Vec<String>, ring: String, witness: Option<(String, String)>, irreducible: bool },
    Map { name: String, source: String, target: String, images: Vec<String>, finite: bool },
    Module { name: String, ring: String, matrix: Vec<Vec<String>>, perfect: bool },
    Cf { name: String, ring: String, body: CfBody },
    Family { name: String, gens: Vec<String>, index: String, ring: String },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Ring { name, .. }
            | Decl::Prime { name, .. }
            | Decl::Map { name, .. }
            | Decl::Module { name, .. }
            | Decl::Cf { name, .. }
            | Decl::Family { name, .. } => name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Decl::Ring { .. } => "ring",
            Decl::Prime { .. } => "prime",
            Decl::Map { .. } => "map",
            Decl::Module { .. } => "module",
            Decl::Cf { .. } => "cf",
            Decl::Family { .. } => "family",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Id(String),
    Int(u64),
    Gens(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub kind: String,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Decl(Decl),
    Query(Query),
}

#[derive(Clone, Debug, Default)]
pub struct Program {
    pub items: Vec<(Item, Span)>,
}

impl Program {
    /// Equality of the syntax trees, ignoring source positions.
    pub fn same_structure(&self, other: &Program) -> bool {
        self.items.len() == other.items.len() && self.items.iter().zip(&other.items).all(|(a, b)| a.0 == b.0)
    }

    pub fn queries(&self) -> impl Iterator<Item = (&Query, Span)> {
        self.items.iter().filter_map(|(i, s)| match i {
            Item::Query(q) => Some((q, *s)),
            _ => None,
        })
    }
}

fn list(v: &[String]) -> String {
    v.join(", ")
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Q => write!(f, "Q"),
            RingExpr::Fp(p) => write!(f, "F({p})"),
            RingExpr::Z => write!(f, "Z"),
            RingExpr::Field { card, characteristic: None } => write!(f, "field({card})"),
            RingExpr::Field { card, characteristic: Some(p) } => write!(f, "field({card}, {p})"),
            RingExpr::Ref(r) => write!(f, "{r}"),
            RingExpr::Poly(b, v) => write!(f, "{}[{}]", Postfix(b), list(v)),
            RingExpr::Series(b, v) => write!(f, "{}[[{}]]", Postfix(b), list(v)),
            RingExpr::Quot(b, g) => write!(f, "{} / ({})", Postfix(b), list(g)),
            RingExpr::Localize(b, LocalizeAt::Prime(p)) => write!(f, "localize({b}, {p})"),
            RingExpr::Localize(b, LocalizeAt::Gens(g)) => write!(f, "localize({b}, ({}))", list(g)),
        }
    }
}

/// A ring expression in postfix-operand position.
struct Postfix<'a>(&'a RingExpr);

impl fmt::Display for Postfix<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            RingExpr::Quot(..) => write!(f, "({})", self.0),
            e => write!(f, "{e}"),
        }
    }
}

impl fmt::Display for PrimeLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeLit::Ref(r) => write!(f, "{r}"),
            PrimeLit::Gens(g) => write!(f, "({})", list(g)),
            PrimeLit::Max(g) if g.is_empty() => write!(f, "max"),
            PrimeLit::Max(g) => write!(f, "max({})", list(g)),
        }
    }
}

impl fmt::Display for CardLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardLit::Int(n) => write!(f, "{n}"),
            CardLit::Inf => write!(f, "inf"),
            CardLit::Sym(s) => write!(f, "{s}"),
        }
    }
}

fn comps(c: &[CompLit]) -> String {
    c.iter().map(|c| format!("{}: {}", c.prime, c.card)).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Ring { name, expr } => write!(f, "ring {name} = {expr};"),
            Decl::Prime { name, gens, ring, witness, irreducible } => {
                write!(f, "prime {name} = ({}) in {ring}", list(gens))?;
                if let Some((a, b)) = witness {
                    write!(f, " witness ({a}, {b})")?;
                }
                if *irreducible {
                    write!(f, " irreducible")?;
                }
                write!(f, ";")
            }
            Decl::Map { name, source, target, images, finite } => {
                write!(f, "map {name} : {source} -> {target} = [{}]{};", list(images), if *finite { " finite" } else { "" })
            }
            Decl::Module { name, ring, matrix, perfect } => {
                let rows: Vec<String> = matrix.iter().map(|r| format!("[{}]", list(r))).collect();
                write!(f, "module {name} = coker {ring} [{}]{};", rows.join(", "), if *perfect { " perfect" } else { "" })
            }
            Decl::Cf { name, ring, body: CfBody::Module(c) } => write!(f, "cf {name} = module in {ring} [{}];", comps(c)),
            Decl::Cf { name, ring, body: CfBody::Complex { degrees, entries, semiflat, bounded } } => {
                writeln!(f, "cf {name} = complex in {ring} {{")?;
                for (d, c) in degrees {
                    writeln!(f, "  {d}: [{}];", comps(c))?;
                }
                for e in entries {
                    writeln!(f, "  d {}: {} -> {} {};", e.degree, e.from, e.to, e.tag)?;
                }
                write!(f, "}}")?;
                if *semiflat {
                    write!(f, " semiflat")?;
                }
                if *bounded {
                    write!(f, " bounded")?;
                }
                write!(f, ";")
            }
            Decl::Family { name, gens, index, ring } => write!(f, "family {name} = ({}) index {index} in {ring};", list(gens)),
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "query {}", self.kind)?;
        for a in &self.args {
            match a {
                Arg::Id(s) => write!(f, " {s}")?,
                Arg::Int(n) => write!(f, " {n}")?,
                Arg::Gens(g) => write!(f, " ({})", list(g))?,
            }
        }
        write!(f, ";")
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (item, _) in &self.items {
            match item {
                Item::Decl(d) => writeln!(f, "{d}")?,
                Item::Query(q) => writeln!(f, "{q}")?,
            }
        }
        Ok(())
    }
}
