use std::collections::HashSet;
use std::fmt;

use super::{Signature, MAX_VARS};
use crate::error::{Error, Result};

/// A propositional sentence over the variables of a signature, by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sentence {
    Var(usize),
    Top,
    Bottom,
    Not(Box<Sentence>),
    And(Box<Sentence>, Box<Sentence>),
    Or(Box<Sentence>, Box<Sentence>),
    Implies(Box<Sentence>, Box<Sentence>),
}

impl Sentence {
    pub fn var(v: usize) -> Self {
        Sentence::Var(v)
    }

    pub fn not(a: Sentence) -> Self {
        Sentence::Not(Box::new(a))
    }

    pub fn and(a: Sentence, b: Sentence) -> Self {
        Sentence::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Sentence, b: Sentence) -> Self {
        Sentence::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Sentence, b: Sentence) -> Self {
        Sentence::Implies(Box::new(a), Box::new(b))
    }

    /// Atoms have depth 0; each connective adds one.
    pub fn depth(&self) -> usize {
        match self {
            Sentence::Var(_) | Sentence::Top | Sentence::Bottom => 0,
            Sentence::Not(a) => 1 + a.depth(),
            Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Whether every variable index is below `n`.
    pub fn within(&self, n: usize) -> bool {
        match self {
            Sentence::Var(v) => *v < n,
            Sentence::Top | Sentence::Bottom => true,
            Sentence::Not(a) => a.within(n),
            Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => a.within(n) && b.within(n),
        }
    }

    /// Truth under the valuation whose true variables form the bitmask.
    pub fn eval(&self, valuation: u64) -> bool {
        match self {
            Sentence::Var(v) => valuation >> v & 1 == 1,
            Sentence::Top => true,
            Sentence::Bottom => false,
            Sentence::Not(a) => !a.eval(valuation),
            Sentence::And(a, b) => a.eval(valuation) && b.eval(valuation),
            Sentence::Or(a, b) => a.eval(valuation) || b.eval(valuation),
            Sentence::Implies(a, b) => !a.eval(valuation) || b.eval(valuation),
        }
    }

    /// Bit `k` is the truth value under valuation `k`; requires `n ≤ 6`.
    pub fn truth_table(&self, n: usize) -> u64 {
        assert!(n <= 6, "truth tables are limited to 6 variables");
        let full = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        self.table_with(&var_tables(n), full)
    }

    fn table_with(&self, vars: &[u64], full: u64) -> u64 {
        match self {
            Sentence::Var(v) => vars[*v],
            Sentence::Top => full,
            Sentence::Bottom => 0,
            Sentence::Not(a) => !a.table_with(vars, full) & full,
            Sentence::And(a, b) => a.table_with(vars, full) & b.table_with(vars, full),
            Sentence::Or(a, b) => a.table_with(vars, full) | b.table_with(vars, full),
            Sentence::Implies(a, b) => (!a.table_with(vars, full) | b.table_with(vars, full)) & full,
        }
    }

    /// Renames variable `v` to `map[v]`.
    pub fn translate(&self, map: &[usize]) -> Sentence {
        match self {
            Sentence::Var(v) => Sentence::Var(map[*v]),
            Sentence::Top => Sentence::Top,
            Sentence::Bottom => Sentence::Bottom,
            Sentence::Not(a) => Sentence::not(a.translate(map)),
            Sentence::And(a, b) => Sentence::and(a.translate(map), b.translate(map)),
            Sentence::Or(a, b) => Sentence::or(a.translate(map), b.translate(map)),
            Sentence::Implies(a, b) => Sentence::implies(a.translate(map), b.translate(map)),
        }
    }

    /// Parses `top`, `bottom`, `(var p)`, `(not φ)`, `(and φ ψ)`, `(or φ ψ)`
    /// and `(implies φ ψ)`.
    pub fn parse(text: &str, sig: &Signature) -> Result<Sentence> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let s = parse_expr(&tokens, &mut pos, sig)?;
        if let Some((col, tok)) = tokens.get(pos) {
            return Err(Error::parse(1, format!("unexpected `{tok}` at column {col}")));
        }
        Ok(s)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> SentenceDisplay<'a> {
        SentenceDisplay { sentence: self, sig }
    }
}

/// S-expression rendering with variable labels.
pub struct SentenceDisplay<'a> {
    sentence: &'a Sentence,
    sig: &'a Signature,
}

impl fmt::Display for SentenceDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = self.sig;
        let sub = move |s: &'_ Sentence| SentenceDisplay { sentence: s, sig }.to_string();
        match self.sentence {
            Sentence::Var(v) => write!(f, "(var {})", self.sig.vars().label(*v)),
            Sentence::Top => write!(f, "top"),
            Sentence::Bottom => write!(f, "bottom"),
            Sentence::Not(a) => write!(f, "(not {})", sub(a)),
            Sentence::And(a, b) => write!(f, "(and {} {})", sub(a), sub(b)),
            Sentence::Or(a, b) => write!(f, "(or {} {})", sub(a), sub(b)),
            Sentence::Implies(a, b) => write!(f, "(implies {} {})", sub(a), sub(b)),
        }
    }
}

fn var_tables(n: usize) -> Vec<u64> {
    (0..n)
        .map(|v| (0..1u64 << n).filter(|k| k >> v & 1 == 1).fold(0, |acc, k| acc | 1 << k))
        .collect()
}

fn tokenize(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if !current.is_empty() {
                out.push((start + 1, std::mem::take(&mut current)));
            }
            if !c.is_whitespace() {
                out.push((i + 1, c.to_string()));
            }
        } else {
            if current.is_empty() {
                start = i;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        out.push((start + 1, current));
    }
    out
}

fn parse_expr(tokens: &[(usize, String)], pos: &mut usize, sig: &Signature) -> Result<Sentence> {
    let Some((col, tok)) = tokens.get(*pos) else {
        return Err(Error::parse(1, "unexpected end of sentence"));
    };
    *pos += 1;
    match tok.as_str() {
        "top" => return Ok(Sentence::Top),
        "bottom" => return Ok(Sentence::Bottom),
        "(" => {}
        other => return Err(Error::parse(1, format!("unexpected `{other}` at column {col}"))),
    }
    let Some((col, head)) = tokens.get(*pos) else {
        return Err(Error::parse(1, "unexpected end of sentence"));
    };
    *pos += 1;
    let s = match head.as_str() {
        "top" => Sentence::Top,
        "bottom" => Sentence::Bottom,
        "var" => {
            let Some((vcol, name)) = tokens.get(*pos) else {
                return Err(Error::parse(1, "missing variable name"));
            };
            *pos += 1;
            let v = sig
                .vars()
                .index_of(name)
                .ok_or_else(|| Error::parse(1, format!("unknown variable `{name}` at column {vcol}")))?;
            Sentence::Var(v)
        }
        "not" => Sentence::not(parse_expr(tokens, pos, sig)?),
        "and" | "or" | "implies" => {
            let a = parse_expr(tokens, pos, sig)?;
            let b = parse_expr(tokens, pos, sig)?;
            match head.as_str() {
                "and" => Sentence::and(a, b),
                "or" => Sentence::or(a, b),
                _ => Sentence::implies(a, b),
            }
        }
        other => return Err(Error::parse(1, format!("unknown connective `{other}` at column {col}"))),
    };
    match tokens.get(*pos) {
        Some((_, t)) if t == ")" => {
            *pos += 1;
            Ok(s)
        }
        Some((c, t)) => Err(Error::parse(1, format!("expected `)` but found `{t}` at column {c}"))),
        None => Err(Error::parse(1, "missing `)`")),
    }
}

/// Sentences over `n` variables up to `depth`, one per truth table, built
/// level by level and keeping the first representative found. Level 0 is
/// the variables followed by `top` and `bottom`; each later level applies
/// `not` to earlier representatives and `and`, `or`, `implies` to pairs.
pub fn enumerate_sentences(n: usize, depth: usize) -> Result<Vec<Sentence>> {
    if n > MAX_VARS {
        return Err(Error::SizeLimit {
            what: "sentence enumeration variables".into(),
            size: n,
            limit: MAX_VARS,
        });
    }
    let vars = var_tables(n);
    let full = (1u64 << (1 << n)) - 1;
    let complete = 1u128 << (1 << n);
    let mut reps: Vec<(Sentence, u64)> = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |s: Sentence, reps: &mut Vec<(Sentence, u64)>| {
        let t = s.table_with(&vars, full);
        if seen.insert(t) {
            reps.push((s, t));
        }
    };
    for v in 0..n {
        push(Sentence::Var(v), &mut reps);
    }
    push(Sentence::Top, &mut reps);
    push(Sentence::Bottom, &mut reps);
    let mut previous = 0;
    for _ in 0..depth {
        if reps.len() as u128 == complete {
            break;
        }
        let snapshot = reps.len();
        for i in previous..snapshot {
            let s = Sentence::not(reps[i].0.clone());
            push(s, &mut reps);
        }
        for i in 0..snapshot {
            for j in 0..snapshot {
                if i < previous && j < previous {
                    continue;
                }
                let (a, b) = (&reps[i].0, &reps[j].0);
                let candidates = [
                    Sentence::and(a.clone(), b.clone()),
                    Sentence::or(a.clone(), b.clone()),
                    Sentence::implies(a.clone(), b.clone()),
                ];
                for s in candidates {
                    push(s, &mut reps);
                }
            }
        }
        previous = snapshot;
    }
    Ok(reps.into_iter().map(|(s, _)| s).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new(["p", "q"]).unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let text = "(and (var p) (not (var q)))";
        let s = Sentence::parse(text, &sig()).unwrap();
        assert_eq!(s.display(&sig()).to_string(), text);
        assert_eq!(s.depth(), 2);
        assert_eq!(Sentence::parse("top", &sig()).unwrap(), Sentence::Top);
        assert_eq!(Sentence::parse("(bottom)", &sig()).unwrap(), Sentence::Bottom);
    }

    #[test]
    fn parse_errors() {
        for bad in ["(var r)", "(and (var p))", "(xor top top)", "(var p) top", ""] {
            assert!(matches!(Sentence::parse(bad, &sig()), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn evaluation() {
        let p = Sentence::var(0);
        assert!(p.eval(0b01));
        assert!(Sentence::implies(Sentence::var(0), Sentence::var(1)).eval(0));
        assert!(!Sentence::Bottom.eval(0b11));
    }

    #[test]
    fn enumeration_is_deduplicated_and_complete() {
        assert_eq!(enumerate_sentences(0, 3).unwrap().len(), 2);
        assert_eq!(enumerate_sentences(1, 1).unwrap().len(), 4);
        let two = enumerate_sentences(2, 3).unwrap();
        assert_eq!(two.len(), 16);
        let tables: HashSet<u64> = two.iter().map(|s| s.truth_table(2)).collect();
        assert_eq!(tables.len(), 16);
        assert!(two.iter().all(|s| s.depth() <= 3));
    }
}
