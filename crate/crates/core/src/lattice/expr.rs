//! Prefix expression syntax for Fock states.
//!
//! ```text
//! expr   := "vac" | "0" | factor | "(" "*" item+ ")" | "(" "+" expr* ")"
//! item   := rational | factor | expr
//! factor := "(" "mode" NAME K ")"          NAME(-K), K >= 1
//!         | "(" "exp" (NAME rational)* ")" e^{Σ q·NAME}
//! ```
//! `*` multiplies its rational arguments and juxtaposes the states (the
//! normally ordered product of commuting creation modes, no cocycle).
//! Example: `(+ (* 1/2 (mode c1 1) (mode d1 1)) (* -1/2 (mode d1 2)))`.

use super::frame::Frame;
use super::state::{FockState, LatticePoint, Word};
use crate::error::{Error, Result};
use crate::exact::{fmt_q, parse_q, Q};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn tokenize(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn read(tokens: &[String], pos: &mut usize) -> Result<Sexp> {
    let t = tokens.get(*pos).ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
    *pos += 1;
    match t.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(read(tokens, pos)?),
                    None => return Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
        }
        ")" => Err(Error::Parse("unexpected ')'".into())),
        a => Ok(Sexp::Atom(a.to_string())),
    }
}

enum Value {
    Scalar(Q),
    State(FockState),
}

fn eval(frame: &Frame, e: &Sexp) -> Result<Value> {
    let dim = frame.dim();
    match e {
        Sexp::Atom(a) if a == "vac" => Ok(Value::State(FockState::vacuum(dim))),
        Sexp::Atom(a) => parse_q(a).map(Value::Scalar),
        Sexp::List(items) => {
            let head = match items.first() {
                Some(Sexp::Atom(h)) => h.as_str(),
                _ => return Err(Error::Parse("expected operator".into())),
            };
            let args = &items[1..];
            match head {
                "mode" => {
                    let [Sexp::Atom(name), Sexp::Atom(k)] = args else {
                        return Err(Error::Parse("(mode NAME K)".into()));
                    };
                    let g = generator(frame, name)?;
                    let k: u32 = k.parse().map_err(|_| Error::Parse(format!("bad mode index {k}")))?;
                    if k == 0 {
                        return Err(Error::Parse("creation mode index must be positive".into()));
                    }
                    Ok(Value::State(FockState::monomial(Q::one(), Word::single(g, k), LatticePoint::zero(dim))))
                }
                "exp" => {
                    if args.len() % 2 != 0 {
                        return Err(Error::Parse("(exp NAME q ...) needs pairs".into()));
                    }
                    let mut v = LatticePoint::zero(dim);
                    for pair in args.chunks(2) {
                        let (Sexp::Atom(name), Sexp::Atom(c)) = (&pair[0], &pair[1]) else {
                            return Err(Error::Parse("(exp NAME q ...)".into()));
                        };
                        v.0[generator(frame, name)?] += parse_q(c)?;
                    }
                    Ok(Value::State(FockState::exp(v)))
                }
                "*" => {
                    let mut coef = Q::one();
                    let mut st = FockState::vacuum(dim);
                    for a in args {
                        match eval(frame, a)? {
                            Value::Scalar(s) => coef *= s,
                            Value::State(s) => st = st.juxtapose(&s),
                        }
                    }
                    Ok(Value::State(st.scale(&coef)))
                }
                "+" => {
                    let mut st = FockState::zero(dim);
                    for a in args {
                        st.add_assign(&as_state(frame, eval(frame, a)?));
                    }
                    Ok(Value::State(st))
                }
                other => Err(Error::Parse(format!("unknown operator {other}"))),
            }
        }
    }
}

fn as_state(frame: &Frame, v: Value) -> FockState {
    match v {
        Value::State(s) => s,
        Value::Scalar(c) => FockState::vacuum(frame.dim()).scale(&c),
    }
}

fn generator(frame: &Frame, name: &str) -> Result<usize> {
    frame.generator(name).ok_or_else(|| Error::Parse(format!("unknown generator {name}")))
}

/// Parses an expression into a state of `frame`.
pub fn parse_state(frame: &Frame, src: &str) -> Result<FockState> {
    let tokens = tokenize(src);
    let mut pos = 0;
    let e = read(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(as_state(frame, eval(frame, &e)?))
}

/// Canonical printed form; `parse_state(print_state(s)) == s`.
pub fn print_state(frame: &Frame, s: &FockState) -> String {
    let names = frame.names();
    let terms: Vec<String> = s
        .iter()
        .map(|(c, w, gamma)| {
            let mut parts = vec![fmt_q(c)];
            for (g, k) in &w.0 {
                parts.push(format!("(mode {} {k})", names[*g]));
            }
            if !gamma.is_zero() {
                let coords: Vec<String> = gamma
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(g, x)| format!("{} {}", names[g], fmt_q(x)))
                    .collect();
                parts.push(format!("(exp {})", coords.join(" ")));
            }
            format!("(* {})", parts.join(" "))
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        format!("(+ {})", terms.join(" "))
    }
}
