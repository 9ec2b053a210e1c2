use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MAX_LEN: usize = 12;
const MAX_LITERAL_TERMS: usize = 8;
const MAX_TERMS: usize = 64;
const VARIABLES: [&str; 5] = ["a", "b", "c", "x", "y"];

/// Statement families the generator draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    Create,
    Rdis,
    Arith,
    Compare,
    Pminmax,
    Reduce,
    Sort,
    Rev,
    Map,
    ExtractBool,
    ReplaceBool,
    Permute,
    ReplaceInt,
    Echo,
    BadIndex,
    Mismatch,
    MvpCreate,
    MvpArith,
    MvpEqual,
    MvpPrint,
    Accessors,
    CoeffsReplace,
    Reconstruct,
    MvpErrors,
}

impl OpKind {
    pub const ALL: [OpKind; 24] = [
        OpKind::Create,
        OpKind::Rdis,
        OpKind::Arith,
        OpKind::Compare,
        OpKind::Pminmax,
        OpKind::Reduce,
        OpKind::Sort,
        OpKind::Rev,
        OpKind::Map,
        OpKind::ExtractBool,
        OpKind::ReplaceBool,
        OpKind::Permute,
        OpKind::ReplaceInt,
        OpKind::Echo,
        OpKind::BadIndex,
        OpKind::Mismatch,
        OpKind::MvpCreate,
        OpKind::MvpArith,
        OpKind::MvpEqual,
        OpKind::MvpPrint,
        OpKind::Accessors,
        OpKind::CoeffsReplace,
        OpKind::Reconstruct,
        OpKind::MvpErrors,
    ];

    fn weight(self) -> u32 {
        match self {
            OpKind::Arith | OpKind::Reduce | OpKind::Sort => 4,
            OpKind::ReplaceBool | OpKind::ExtractBool | OpKind::MvpArith => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzStatement {
    pub kind: OpKind,
    pub text: String,
}

/// A generated script. Line `i + 1` of [`FuzzProgram::source`] is
/// `statements[i]`, possibly one of several lines sharing a kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzProgram {
    pub seed: u64,
    pub statements: Vec<FuzzStatement>,
}

impl FuzzProgram {
    pub fn source(&self) -> String {
        let mut s = String::new();
        for st in &self.statements {
            s.push_str(&st.text);
            s.push('\n');
        }
        s
    }

    pub fn contains(&self, kind: OpKind) -> bool {
        self.statements.iter().any(|s| s.kind == kind)
    }
}

#[derive(Debug, Clone)]
struct Vector {
    name: String,
    family: usize,
    /// Known only for vectors whose length the generator controls.
    len: Option<usize>,
}

#[derive(Debug, Clone)]
struct Poly {
    name: String,
    family: usize,
    terms: usize,
}

struct Gen {
    rng: ChaCha8Rng,
    out: Vec<FuzzStatement>,
    vectors: Vec<Vector>,
    polys: Vec<Poly>,
    families: usize,
    names: usize,
}

impl Gen {
    fn emit(&mut self, kind: OpKind, text: impl Into<String>) {
        self.out.push(FuzzStatement {
            kind,
            text: text.into(),
        });
    }

    fn family(&mut self) -> usize {
        self.families += 1;
        self.families
    }

    fn name(&mut self, prefix: &str) -> String {
        self.names += 1;
        format!("{prefix}{}", self.names)
    }

    fn small(&mut self) -> i64 {
        self.rng.gen_range(-5..=12)
    }

    fn pick_number(&mut self) -> Option<Vector> {
        self.vectors.choose(&mut self.rng).cloned()
    }

    fn pick_poly(&mut self) -> Option<Poly> {
        self.polys.choose(&mut self.rng).cloned()
    }

    fn sibling(&mut self, v: &Vector) -> Vector {
        let same: Vec<Vector> = self
            .vectors
            .iter()
            .filter(|w| w.family == v.family)
            .cloned()
            .collect();
        same.choose(&mut self.rng).cloned().unwrap_or_else(|| v.clone())
    }

    fn bind(&mut self, v: Vector) {
        if let Some(old) = self.vectors.iter_mut().find(|w| w.name == v.name) {
            *old = v;
        } else {
            self.vectors.push(v);
        }
    }

    fn bind_poly(&mut self, p: Poly) {
        if let Some(old) = self.polys.iter_mut().find(|q| q.name == p.name) {
            *old = p;
        } else {
            self.polys.push(p);
        }
    }

    fn mask(&mut self, v: &Vector) -> String {
        let w = self.sibling(v);
        let op = ["<", ">", "<=", ">=", "==", "!="].choose(&mut self.rng).expect("nonempty");
        format!("{} {op} {}", w.name, self.small())
    }

    fn create(&mut self) {
        let n = self.rng.gen_range(1..=MAX_LEN);
        let name = self.name("d");
        let body = if self.rng.gen_bool(0.3) {
            format!("1:{n}")
        } else {
            let vals: Vec<String> = (0..n).map(|_| self.small().to_string()).collect();
            vals.join(", ")
        };
        self.emit(OpKind::Create, format!("{name} <- disord({body})"));
        let family = self.family();
        self.bind(Vector { name, family, len: Some(n) });
    }

    fn rdis(&mut self) {
        let n = self.rng.gen_range(1..=MAX_LEN);
        let seed = self.rng.gen_range(0..1000);
        let name = self.name("d");
        self.emit(OpKind::Rdis, format!("{name} <- rdis({n}, {seed})"));
        let family = self.family();
        self.bind(Vector { name, family, len: Some(n) });
    }

    fn mvp_literal(&mut self) -> (String, usize) {
        let n = self.rng.gen_range(1..=4.min(MAX_LITERAL_TERMS));
        let mut terms = Vec::new();
        for _ in 0..n {
            let coeff = self.rng.gen_range(1..=9);
            let mut term = coeff.to_string();
            for var in VARIABLES {
                if self.rng.gen_bool(0.4) {
                    let e = self.rng.gen_range(1..=4);
                    term.push_str(&if e == 1 { format!(" {var}") } else { format!(" {var}^{e}") });
                }
            }
            terms.push(term);
        }
        let mut text = terms[0].clone();
        for t in &terms[1..] {
            text.push_str(if self.rng.gen_bool(0.3) { " - " } else { " + " });
            text.push_str(t);
        }
        (text, n)
    }

    fn step(&mut self, kind: OpKind) -> bool {
        match kind {
            OpKind::Create => self.create(),
            OpKind::Rdis => self.rdis(),
            OpKind::Arith => {
                let Some(v) = self.pick_number() else { return false };
                let name = self.name("d");
                let rhs = if self.rng.gen_bool(0.5) {
                    let w = self.sibling(&v);
                    let op = ["+", "-", "*"].choose(&mut self.rng).expect("nonempty");
                    format!("{} {op} {}", v.name, w.name)
                } else {
                    match self.rng.gen_range(0..6) {
                        0 => format!("{} + {}", v.name, self.small()),
                        1 => format!("{} - {}", self.small(), v.name),
                        2 => format!("{} * {}", self.rng.gen_range(-3..=3), v.name),
                        3 => format!("{} / {}", v.name, self.rng.gen_range(1..=4)),
                        4 => format!("{} %% {}", v.name, self.rng.gen_range(2..=5)),
                        _ => format!("{}^2", v.name),
                    }
                };
                self.emit(kind, format!("{name} <- {rhs}"));
                self.bind(Vector { name, ..v });
            }
            OpKind::Compare => {
                let Some(v) = self.pick_number() else { return false };
                let name = self.name("m");
                let mask = self.mask(&v);
                self.emit(kind, format!("{name} <- {mask}"));
                // a named mask is consumed by the very next statement
                if self.rng.gen_bool(0.5) {
                    let (a, b) = (v.name.clone(), self.sibling(&v).name);
                    self.emit(OpKind::ReplaceBool, format!("{a}[{name}] <- {b}[{name}] + 1"));
                } else {
                    let out = self.name("d");
                    self.emit(OpKind::ExtractBool, format!("{out} <- {}[{name}]", v.name));
                    let family = self.family();
                    self.bind(Vector { name: out, family, len: None });
                }
            }
            OpKind::Pminmax => {
                let Some(v) = self.pick_number() else { return false };
                let f = if self.rng.gen_bool(0.5) { "pmax" } else { "pmin" };
                let other = if self.rng.gen_bool(0.5) {
                    self.sibling(&v).name
                } else {
                    self.small().to_string()
                };
                let name = self.name("d");
                self.emit(kind, format!("{name} <- {f}({}, {other})", v.name));
                self.bind(Vector { name, ..v });
            }
            OpKind::Reduce => {
                let Some(v) = self.pick_number() else { return false };
                let text = match self.rng.gen_range(0..8) {
                    0 => format!("sum({})", v.name),
                    1 => format!("prod({} %% 3 + 1)", v.name),
                    2 => format!("max({})", v.name),
                    3 => format!("min({})", v.name),
                    4 => format!("length({})", v.name),
                    5 => format!("any({})", self.mask(&v)),
                    6 => format!("all({})", self.mask(&v)),
                    _ => format!("print(sum({}[{}]))", v.name, self.mask(&v)),
                };
                self.emit(kind, text);
            }
            OpKind::Sort => {
                let Some(v) = self.pick_number() else { return false };
                let text = match self.rng.gen_range(0..4) {
                    0 => format!("sort({})", v.name),
                    1 => format!("sort({}, TRUE)", v.name),
                    2 => format!("sort({}[{}])", v.name, self.mask(&v)),
                    _ => format!("sort({})", self.mask(&v)),
                };
                self.emit(kind, text);
            }
            OpKind::Rev => {
                let Some(v) = self.pick_number() else { return false };
                let name = self.name("d");
                self.emit(kind, format!("{name} <- rev({})", v.name));
                let family = self.family();
                self.bind(Vector { name, family, ..v });
            }
            OpKind::Map => {
                let Some(v) = self.pick_number() else { return false };
                let name = self.name("d");
                self.emit(kind, format!("{name} <- map({}, double)", v.name));
                self.bind(Vector { name, ..v });
            }
            OpKind::ExtractBool => {
                let Some(v) = self.pick_number() else { return false };
                let name = self.name("d");
                let mask = self.mask(&v);
                self.emit(kind, format!("{name} <- {}[{mask}]", v.name));
                let family = self.family();
                self.bind(Vector { name, family, len: None });
            }
            OpKind::ReplaceBool => {
                let Some(v) = self.pick_number() else { return false };
                let mask = self.mask(&v);
                let text = match self.rng.gen_range(0..3) {
                    0 => format!("{}[{mask}] <- {}", v.name, self.small()),
                    1 => format!("{}[{mask}] <- {}[{mask}] * 2", v.name, v.name),
                    _ => {
                        let w = self.sibling(&v);
                        format!("{}[{mask}] <- {}[{mask}]", v.name, w.name)
                    }
                };
                self.emit(kind, text);
            }
            OpKind::Permute => {
                let Some(v) = self.pick_number().filter(|v| v.len.is_some()) else { return false };
                let n = v.len.expect("filtered");
                let mut perm: Vec<usize> = (1..=n).collect();
                perm.shuffle(&mut self.rng);
                let idx: Vec<String> = perm.iter().map(usize::to_string).collect();
                let name = self.name("d");
                self.emit(kind, format!("{name} <- {}[c({})]", v.name, idx.join(", ")));
                let family = self.family();
                self.bind(Vector { name, family, ..v });
            }
            OpKind::ReplaceInt => {
                let Some(v) = self.pick_number().filter(|v| v.len.is_some()) else { return false };
                let n = v.len.expect("filtered");
                if self.rng.gen_bool(0.5) {
                    let k = self.small();
                    self.emit(kind, format!("{}[1:{n}] <- {k}", v.name));
                } else {
                    let vals: Vec<String> = (0..n).map(|_| self.small().to_string()).collect();
                    self.emit(kind, format!("{}[1:{n}] <- c({})", v.name, vals.join(", ")));
                    let family = self.family();
                    self.bind(Vector { family, ..v });
                }
            }
            OpKind::Echo => {
                let Some(v) = self.vectors.choose(&mut self.rng).cloned() else { return false };
                self.emit(kind, v.name);
            }
            OpKind::BadIndex => {
                let Some(v) = self.pick_number() else { return false };
                let i = self.rng.gen_range(1..=v.len.unwrap_or(3).max(1));
                let text = if self.rng.gen_bool(0.6) {
                    format!("try({}[{i}])", v.name)
                } else {
                    format!("try({}[{i}] <- {})", v.name, self.small())
                };
                self.emit(kind, text);
            }
            OpKind::Mismatch => {
                let Some(v) = self.pick_number() else { return false };
                let others: Vec<Vector> = self
                    .vectors
                    .iter()
                    .filter(|w| w.family != v.family)
                    .cloned()
                    .collect();
                let Some(w) = others.choose(&mut self.rng).cloned() else { return false };
                let text = match self.rng.gen_range(0..3) {
                    0 => format!("try({} + {})", v.name, w.name),
                    1 => format!("try({}[{} > 0])", v.name, w.name),
                    _ => format!("try({}[{} > 0] <- 1)", v.name, w.name),
                };
                self.emit(kind, text);
            }
            OpKind::MvpCreate => {
                let name = self.name("p");
                let terms = if self.rng.gen_bool(0.25) {
                    let seed = self.rng.gen_range(0..1000);
                    self.emit(kind, format!("{name} <- rmvp({seed})"));
                    7
                } else {
                    let (text, n) = self.mvp_literal();
                    self.emit(kind, format!("{name} <- mvp(\"{text}\")"));
                    n
                };
                let family = self.family();
                self.bind_poly(Poly { name, family, terms });
            }
            OpKind::MvpArith => {
                let (Some(p), Some(q)) = (self.pick_poly(), self.pick_poly()) else { return false };
                let (text, terms) = match self.rng.gen_range(0..5) {
                    0 => (format!("{} + {}", p.name, q.name), p.terms + q.terms),
                    1 => (format!("{} - {} * {}", p.name, self.rng.gen_range(1..=3), q.name), p.terms + q.terms),
                    2 if p.terms * q.terms <= MAX_TERMS => (format!("{} * {}", p.name, q.name), p.terms * q.terms),
                    3 if p.terms * p.terms <= MAX_TERMS => (format!("{}^2", p.name), p.terms * p.terms),
                    _ => (format!("-{} + {}", p.name, self.rng.gen_range(1..=9)), p.terms + 1),
                };
                let name = self.name("p");
                self.emit(kind, format!("{name} <- {text}"));
                let family = self.family();
                self.bind_poly(Poly { name, family, terms });
            }
            OpKind::MvpEqual => {
                let (Some(p), Some(q)) = (self.pick_poly(), self.pick_poly()) else { return false };
                let text = if p.terms * q.terms <= MAX_TERMS && self.rng.gen_bool(0.5) {
                    format!("({0} + {1}) * ({0} - {1}) == {0}^2 - {1}^2", p.name, q.name)
                } else {
                    format!("{} + {} == {} + {}", p.name, q.name, q.name, p.name)
                };
                self.emit(kind, text);
            }
            OpKind::MvpPrint => {
                let Some(p) = self.pick_poly() else { return false };
                self.emit(kind, p.name);
            }
            OpKind::Accessors => {
                let Some(p) = self.pick_poly() else { return false };
                match self.rng.gen_range(0..4) {
                    0 => {
                        let name = self.name("d");
                        self.emit(kind, format!("{name} <- coeffs({})", p.name));
                        self.bind(Vector { name, family: p.family, len: None });
                    }
                    1 => self.emit(kind, format!("sort(coeffs({}))", p.name)),
                    2 => self.emit(kind, format!("vars({})", p.name)),
                    _ => self.emit(kind, format!("sum(coeffs({}) * 2)", p.name)),
                }
            }
            OpKind::CoeffsReplace => {
                let Some(p) = self.pick_poly() else { return false };
                let text = match self.rng.gen_range(0..3) {
                    0 => format!("coeffs({0})[coeffs({0}) < {1}] <- 0", p.name, self.rng.gen_range(1..=5)),
                    1 => format!("coeffs({0}) <- coeffs({0}) %% 2", p.name),
                    _ => format!("coeffs({0}) <- coeffs({0})^2 + 1", p.name),
                };
                self.emit(kind, text);
                let family = self.family();
                self.bind_poly(Poly { family, ..p });
            }
            OpKind::Reconstruct => {
                let Some(p) = self.pick_poly() else { return false };
                let (v, w, c) = (self.name("v"), self.name("w"), self.name("k"));
                self.emit(kind, format!("{v} <- vars({})", p.name));
                self.emit(kind, format!("{w} <- powers({})", p.name));
                self.emit(kind, format!("{c} <- coeffs({})", p.name));
                match self.rng.gen_range(0..3) {
                    0 => {
                        let k = self.rng.gen_range(1..=6);
                        self.emit(kind, format!("{w}[{c} < {k}] <- map({w}, double)[{c} < {k}]"));
                    }
                    1 => self.emit(
                        kind,
                        format!("{v}[map({w}, lengths) > 1] <- map({v}, upper)[map({w}, lengths) > 1]"),
                    ),
                    _ => {}
                }
                let name = self.name("p");
                self.emit(kind, format!("{name} <- mvp({v}, {w}, {c})"));
                self.emit(kind, name.clone());
                let family = self.family();
                self.bind_poly(Poly { name, family, terms: p.terms });
            }
            OpKind::MvpErrors => {
                let (Some(p), Some(q)) = (self.pick_poly(), self.pick_poly()) else { return false };
                let text = match self.rng.gen_range(0..4) {
                    0 => format!("try(coeffs({}) + coeffs({}))", p.name, q.name),
                    1 => format!("try(coeffs({}) <- coeffs({}))", p.name, q.name),
                    2 => format!("try(coeffs({}) <- 1:2)", p.name),
                    _ => format!("try(coeffs({0})[coeffs({0}) < 3] <- coeffs({0})[coeffs({1}) < 3])", p.name, q.name),
                };
                self.emit(kind, text);
            }
        }
        true
    }
}

/// Generates a program deterministically from `seed`.
pub fn gen_program(seed: u64) -> FuzzProgram {
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        out: Vec::new(),
        vectors: Vec::new(),
        polys: Vec::new(),
        families: 0,
        names: 0,
    };
    g.create();
    g.rdis();
    g.step(OpKind::MvpCreate);
    g.step(OpKind::MvpCreate);

    let weights: Vec<u32> = OpKind::ALL.iter().map(|k| k.weight()).collect();
    let total: u32 = weights.iter().sum();
    let steps = g.rng.gen_range(16..=32);
    for _ in 0..steps {
        let mut pick = g.rng.gen_range(0..total);
        let mut kind = OpKind::ALL[0];
        for (k, w) in OpKind::ALL.iter().zip(&weights) {
            if pick < *w {
                kind = *k;
                break;
            }
            pick -= w;
        }
        g.step(kind);
    }
    FuzzProgram {
        seed,
        statements: g.out,
    }
}
