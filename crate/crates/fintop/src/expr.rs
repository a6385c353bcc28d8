//! The construction-expression language: generators, operators and literal
//! JSON spaces, parsed by recursive descent with precise error positions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr  := 'S' | 'D' '(' int ')' | 'I' '(' int ')' | 'C' '(' int ')'
//!        | 'B' '(' int ')' | 'Comega' | 'Cof'
//!        | 'sum' '(' [expr {',' expr}] ')'
//!        | 'prod' '(' expr ',' expr ')'
//!        | 'sub' '(' expr {',' int}+ ')'
//!        | 'q' '(' expr {',' int}+ ')'
//!        | 'pf' '(' expr ',' int ')'
//!        | 'tri' '(' expr ',' expr ',' int ')'
//!        | 'dtri' '(' expr ',' expr ',' int ')'
//!        | 'pinch' '(' expr ',' expr ',' int ',' int ')'
//!        | 'asum' '(' expr ';' expr '@' int {',' expr '@' int} ')'
//!        | 'tower' '(' expr ',' int ')'
//!        | 'r0' '(' expr ')'
//!        | json-literal
//! ```

use crate::classes::t0_reflection;
use crate::constructions::{a_sum, dtriangle, iterate_a, pinched_subspace, triangle};
use crate::error::{Error, Result};
use crate::omega::SymbolicPrimeSpace;
use crate::prime::{gen, is_prime, prime_factor, Generator};
use crate::space::{mask_from_points, product, quotient_by_map, sum, FinSpace};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    S,
    D(usize),
    I(usize),
    C(usize),
    B(usize),
    Comega,
    Cof,
    Literal(FinSpace),
    Sum(Vec<Expr>),
    Prod(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Vec<usize>),
    Quot(Box<Expr>, Vec<usize>),
    Pf(Box<Expr>, usize),
    Tri(Box<Expr>, Box<Expr>, usize),
    Dtri(Box<Expr>, Box<Expr>, usize),
    Pinch(Box<Expr>, Box<Expr>, usize, usize),
    Asum(Box<Expr>, Vec<(Expr, usize)>),
    Tower(Box<Expr>, usize),
    R0(Box<Expr>),
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::S => write!(f, "S"),
            Expr::D(n) => write!(f, "D({n})"),
            Expr::I(n) => write!(f, "I({n})"),
            Expr::C(n) => write!(f, "C({n})"),
            Expr::B(n) => write!(f, "B({n})"),
            Expr::Comega => write!(f, "Comega"),
            Expr::Cof => write!(f, "Cof"),
            Expr::Literal(x) => {
                let json = x.to_json().map_err(|_| std::fmt::Error)?;
                write!(f, "{json}")
            }
            Expr::Sum(parts) => {
                write!(f, "sum(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Expr::Prod(a, b) => write!(f, "prod({a}, {b})"),
            Expr::Sub(e, pts) => {
                write!(f, "sub({e}")?;
                for p in pts {
                    write!(f, ", {p}")?;
                }
                write!(f, ")")
            }
            Expr::Quot(e, labels) => {
                write!(f, "q({e}")?;
                for l in labels {
                    write!(f, ", {l}")?;
                }
                write!(f, ")")
            }
            Expr::Pf(e, a) => write!(f, "pf({e}, {a})"),
            Expr::Tri(x, y, b) => write!(f, "tri({x}, {y}, {b})"),
            Expr::Dtri(x, y, b) => write!(f, "dtri({x}, {y}, {b})"),
            Expr::Pinch(x, y, a, b) => write!(f, "pinch({x}, {y}, {a}, {b})"),
            Expr::Asum(a, parts) => {
                write!(f, "asum({a}; ")?;
                for (i, (p, base)) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}@{base}")?;
                }
                write!(f, ")")
            }
            Expr::Tower(a, n) => write!(f, "tower({a}, {n})"),
            Expr::R0(e) => write!(f, "r0({e})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(usize),
    Json(FinSpace),
    LParen,
    RParen,
    Comma,
    Semi,
    At,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, expected: &str) -> Error {
        Error::Syntax {
            line: self.line,
            col: self.col,
            expected: expected.to_string(),
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    /// Next token with its starting position.
    fn next_tok(&mut self) -> Result<Option<(Tok, usize, usize)>> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let Some(&c) = self.src.get(self.pos) else {
            return Ok(None);
        };
        let tok = match c {
            b'(' => {
                self.bump();
                Tok::LParen
            }
            b')' => {
                self.bump();
                Tok::RParen
            }
            b',' => {
                self.bump();
                Tok::Comma
            }
            b';' => {
                self.bump();
                Tok::Semi
            }
            b'@' => {
                self.bump();
                Tok::At
            }
            b'{' => {
                let start = self.pos;
                let mut depth = 0usize;
                loop {
                    match self.bump() {
                        Some(b'{') => depth += 1,
                        Some(b'}') => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        Some(_) => {}
                        None => return Err(self.err("closing '}' of a space literal")),
                    }
                }
                let text = std::str::from_utf8(&self.src[start..self.pos])
                    .map_err(|_| self.err("utf-8 in a space literal"))?;
                let space = FinSpace::from_json(text).map_err(|e| Error::Syntax {
                    line,
                    col,
                    expected: format!("valid space literal ({e})"),
                })?;
                Tok::Json(space)
            }
            b'0'..=b'9' => {
                let mut v: usize = 0;
                while let Some(&d) = self.src.get(self.pos) {
                    if d.is_ascii_digit() {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add((d - b'0') as usize))
                            .ok_or_else(|| self.err("a smaller integer"))?;
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Int(v)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while let Some(&d) = self.src.get(self.pos) {
                    if d.is_ascii_alphanumeric() || d == b'_' {
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
            }
            _ => return Err(self.err("an expression token")),
        };
        Ok(Some((tok, line, col)))
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn err(&self, expected: &str) -> Error {
        let (line, col) = self.here();
        Error::Syntax {
            line,
            col,
            expected: expected.to_string(),
        }
    }

    fn next(&mut self, expected: &str) -> Result<Tok> {
        let t = self
            .toks
            .get(self.pos)
            .map(|(t, _, _)| t.clone())
            .ok_or_else(|| self.err(expected))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<()> {
        if self.next(expected)? != tok {
            self.pos -= 1;
            Err(self.err(expected))
        } else {
            Ok(())
        }
    }

    fn int(&mut self) -> Result<usize> {
        match self.next("an integer")? {
            Tok::Int(v) => Ok(v),
            _ => {
                self.pos -= 1;
                Err(self.err("an integer"))
            }
        }
    }

    fn int_list(&mut self, at_least: usize, what: &str) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            out.push(self.int()?);
        }
        if out.len() < at_least {
            return Err(self.err(what));
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr> {
        match self.next("an expression")? {
            Tok::Json(space) => Ok(Expr::Literal(space)),
            Tok::Ident(name) => self.call(&name),
            _ => {
                self.pos -= 1;
                Err(self.err("an expression"))
            }
        }
    }

    fn unary_int(&mut self, name: &str) -> Result<usize> {
        self.expect(Tok::LParen, &format!("'(' after {name}"))?;
        let n = self.int()?;
        self.expect(Tok::RParen, "')'")?;
        Ok(n)
    }

    fn call(&mut self, name: &str) -> Result<Expr> {
        match name {
            "S" => Ok(Expr::S),
            "Comega" => Ok(Expr::Comega),
            "Cof" => Ok(Expr::Cof),
            "D" => Ok(Expr::D(self.unary_int("D")?)),
            "I" => Ok(Expr::I(self.unary_int("I")?)),
            "C" => Ok(Expr::C(self.unary_int("C")?)),
            "B" => Ok(Expr::B(self.unary_int("B")?)),
            "sum" => {
                self.expect(Tok::LParen, "'(' after sum")?;
                let mut parts = Vec::new();
                if self.peek() != Some(&Tok::RParen) {
                    parts.push(self.expr()?);
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        parts.push(self.expr()?);
                    }
                }
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Sum(parts))
            }
            "prod" => {
                self.expect(Tok::LParen, "'(' after prod")?;
                let a = self.expr()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Prod(Box::new(a), Box::new(b)))
            }
            "sub" => {
                self.expect(Tok::LParen, "'(' after sub")?;
                let e = self.expr()?;
                let pts = self.int_list(0, "point arguments")?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Sub(Box::new(e), pts))
            }
            "q" => {
                self.expect(Tok::LParen, "'(' after q")?;
                let e = self.expr()?;
                let labels = self.int_list(1, "label arguments")?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Quot(Box::new(e), labels))
            }
            "pf" => {
                self.expect(Tok::LParen, "'(' after pf")?;
                let e = self.expr()?;
                self.expect(Tok::Comma, "','")?;
                let a = self.int()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Pf(Box::new(e), a))
            }
            "tri" | "dtri" => {
                self.expect(Tok::LParen, "'('")?;
                let x = self.expr()?;
                self.expect(Tok::Comma, "','")?;
                let y = self.expr()?;
                self.expect(Tok::Comma, "',' and a basepoint (arity is 3)")?;
                let b = self.int()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(if name == "tri" {
                    Expr::Tri(Box::new(x), Box::new(y), b)
                } else {
                    Expr::Dtri(Box::new(x), Box::new(y), b)
                })
            }
            "pinch" => {
                self.expect(Tok::LParen, "'(' after pinch")?;
                let x = self.expr()?;
                self.expect(Tok::Comma, "','")?;
                let y = self.expr()?;
                self.expect(Tok::Comma, "','")?;
                let a = self.int()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.int()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Pinch(Box::new(x), Box::new(y), a, b))
            }
            "asum" => {
                self.expect(Tok::LParen, "'(' after asum")?;
                let a = self.expr()?;
                self.expect(Tok::Semi, "';' separating the prime space")?;
                let mut parts = Vec::new();
                loop {
                    let p = self.expr()?;
                    self.expect(Tok::At, "'@' before the basepoint")?;
                    let base = self.int()?;
                    parts.push((p, base));
                    if self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Asum(Box::new(a), parts))
            }
            "tower" => {
                self.expect(Tok::LParen, "'(' after tower")?;
                let a = self.expr()?;
                self.expect(Tok::Comma, "','")?;
                let n = self.int()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Tower(Box::new(a), n))
            }
            "r0" => {
                self.expect(Tok::LParen, "'(' after r0")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::R0(Box::new(e)))
            }
            _ => {
                self.pos -= 1;
                Err(self.err("a generator or operator name"))
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut lexer = Lexer::new(src);
    let mut toks = Vec::new();
    while let Some(t) = lexer.next_tok()? {
        toks.push(t);
    }
    let end = (lexer.line, lexer.col);
    let mut p = Parser { toks, pos: 0, end };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("end of input"));
    }
    Ok(e)
}

/// Evaluation result: a finite space or a symbolic description.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Finite(FinSpace),
    Symbolic(SymbolicValue),
}

#[derive(Clone, Debug, PartialEq)]
pub enum SymbolicValue {
    /// The filter-described prime space over the naturals.
    COmega,
    /// The cofinite topology on the naturals.
    CofiniteSpace,
}

impl SymbolicValue {
    pub fn prime_space(&self) -> Option<SymbolicPrimeSpace> {
        match self {
            SymbolicValue::COmega => Some(SymbolicPrimeSpace::c_omega()),
            SymbolicValue::CofiniteSpace => None,
        }
    }
}

impl Value {
    pub fn finite(self) -> Result<FinSpace> {
        match self {
            Value::Finite(x) => Ok(x),
            Value::Symbolic(s) => Err(Error::Eval(format!(
                "operation needs a finite space, got the symbolic space {s:?}"
            ))),
        }
    }
}

pub fn eval(e: &Expr) -> Result<Value> {
    let fin = |v: Result<FinSpace>| v.map(Value::Finite);
    match e {
        Expr::S => Ok(Value::Finite(FinSpace::sierpinski())),
        Expr::D(n) => fin(gen(Generator::D, *n)),
        Expr::I(n) => fin(gen(Generator::I, *n)),
        Expr::C(n) => fin(gen(Generator::C, *n)),
        Expr::B(n) => fin(gen(Generator::B, *n)),
        Expr::Comega => Ok(Value::Symbolic(SymbolicValue::COmega)),
        Expr::Cof => Ok(Value::Symbolic(SymbolicValue::CofiniteSpace)),
        Expr::Literal(x) => Ok(Value::Finite(x.clone())),
        Expr::Sum(parts) => {
            let spaces: Vec<FinSpace> = parts
                .iter()
                .map(|p| eval(p)?.finite())
                .collect::<Result<_>>()?;
            fin(sum(&spaces).map(|(s, _)| s))
        }
        Expr::Prod(a, b) => {
            let x = eval(a)?.finite()?;
            let y = eval(b)?.finite()?;
            fin(product(&x, &y).map(|(p, _)| p))
        }
        Expr::Sub(e, pts) => {
            let x = eval(e)?.finite()?;
            for &p in pts {
                if p >= x.n() {
                    return Err(Error::PointOutOfRange { point: p, n: x.n() });
                }
            }
            Ok(Value::Finite(
                x.subspace(mask_from_points(pts.iter().copied())).0,
            ))
        }
        Expr::Quot(e, labels) => {
            let x = eval(e)?.finite()?;
            if labels.len() != x.n() {
                return Err(Error::Eval(format!(
                    "q needs one label per point ({} expected, {} given)",
                    x.n(),
                    labels.len()
                )));
            }
            let m = labels.iter().copied().max().map_or(0, |v| v + 1);
            fin(quotient_by_map(&x, labels, m).map(|(q, _)| q))
        }
        Expr::Pf(e, a) => {
            let x = eval(e)?.finite()?;
            fin(prime_factor(&x, *a))
        }
        Expr::Tri(a, b, pt) => {
            let x = eval(a)?.finite()?;
            let y = eval(b)?.finite()?;
            fin(triangle(&x, &y, *pt).map(|p| p.base))
        }
        Expr::Dtri(a, b, pt) => {
            let x = eval(a)?.finite()?;
            let y = eval(b)?.finite()?;
            fin(dtriangle(&x, &y, *pt).map(|p| p.base))
        }
        Expr::Pinch(xe, ye, a, b) => {
            let x = eval(xe)?.finite()?;
            let y = eval(ye)?.finite()?;
            fin(pinched_subspace(&x, &y, *a, *b).map(|p| p.sub))
        }
        Expr::Asum(ae, parts) => {
            let a = eval(ae)?.finite()?;
            let view = is_prime(&a).ok_or_else(|| {
                Error::Eval("asum needs a prime space as its first argument".into())
            })?;
            let evaluated: Vec<(FinSpace, usize)> = parts
                .iter()
                .map(|(p, base)| Ok((eval(p)?.finite()?, *base)))
                .collect::<Result<_>>()?;
            fin(a_sum(&view, &evaluated).map(|g| g.space))
        }
        Expr::Tower(ae, n) => {
            let a = eval(ae)?.finite()?;
            let view = is_prime(&a).ok_or_else(|| {
                Error::Eval("tower needs a prime space as its first argument".into())
            })?;
            fin(iterate_a(&view, *n).map(|t| t.top().clone()))
        }
        Expr::R0(e) => {
            let x = eval(e)?.finite()?;
            Ok(Value::Finite(t0_reflection(&x).0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let e = parse("tri(S, S, 0)").unwrap();
        assert_eq!(
            e,
            Expr::Tri(Box::new(Expr::S), Box::new(Expr::S), 0)
        );
        let e = parse("pf(sum(S,S), 2)").unwrap();
        assert_eq!(
            e,
            Expr::Pf(Box::new(Expr::Sum(vec![Expr::S, Expr::S])), 2)
        );
        // arity error with a position
        match parse("tri(S, S)") {
            Err(Error::Syntax { line, col, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(col, 9);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parse_literals_and_asum() {
        let e = parse(r#"sum({"points":2,"opens":[[],[1],[0,1]]}, D(1))"#).unwrap();
        match &e {
            Expr::Sum(parts) => {
                assert_eq!(parts[0], Expr::Literal(FinSpace::sierpinski()));
            }
            _ => panic!(),
        }
        let e = parse("asum(S; D(2)@0)").unwrap();
        assert_eq!(
            e,
            Expr::Asum(Box::new(Expr::S), vec![(Expr::D(2), 0)])
        );
    }

    #[test]
    fn eval_examples() {
        let b2 = eval(&parse("B(2)").unwrap()).unwrap().finite().unwrap();
        assert_eq!(b2.opens().unwrap(), vec![0b000, 0b100, 0b110, 0b111]);

        let v = eval(&parse("q(sum(S,S), 0, 1, 1, 0)").unwrap())
            .unwrap()
            .finite()
            .unwrap();
        assert_eq!(v, FinSpace::indiscrete(2));

        let v = eval(&parse("r0(I(3))").unwrap()).unwrap().finite().unwrap();
        assert_eq!(v, FinSpace::discrete(1));

        assert!(matches!(
            eval(&parse("sum(S, Comega)").unwrap()),
            Err(Error::Eval(_))
        ));
        assert!(matches!(
            eval(&parse("tower(D(2), 2)").unwrap()),
            Err(Error::Eval(_))
        ));
    }

    fn splitmix(state: &mut u64) -> u64 {
        *state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn random_expr(state: &mut u64, depth: usize) -> Expr {
        let pick = splitmix(state) % if depth == 0 { 7 } else { 15 };
        let small = |state: &mut u64| (splitmix(state) % 4 + 1) as usize;
        match pick {
            0 => Expr::S,
            1 => Expr::D(small(state)),
            2 => Expr::I(small(state)),
            3 => Expr::C(small(state)),
            4 => Expr::B(small(state)),
            5 => Expr::Comega,
            6 => Expr::Literal(FinSpace::sierpinski()),
            7 => Expr::Sum(
                (0..splitmix(state) % 3)
                    .map(|_| random_expr(state, depth - 1))
                    .collect(),
            ),
            8 => Expr::Prod(
                Box::new(random_expr(state, depth - 1)),
                Box::new(random_expr(state, depth - 1)),
            ),
            9 => Expr::Sub(
                Box::new(random_expr(state, depth - 1)),
                (0..splitmix(state) % 3).map(|i| i as usize).collect(),
            ),
            10 => Expr::Pf(Box::new(random_expr(state, depth - 1)), small(state)),
            11 => Expr::Tri(
                Box::new(random_expr(state, depth - 1)),
                Box::new(random_expr(state, depth - 1)),
                small(state) - 1,
            ),
            12 => Expr::Asum(
                Box::new(random_expr(state, depth - 1)),
                (0..splitmix(state) % 2 + 1)
                    .map(|_| (random_expr(state, depth - 1), small(state) - 1))
                    .collect(),
            ),
            13 => Expr::Tower(Box::new(random_expr(state, depth - 1)), small(state)),
            _ => Expr::R0(Box::new(random_expr(state, depth - 1))),
        }
    }

    #[test]
    fn print_parse_round_trip_fixed_seed() {
        let mut state = 0x0123_4567_89ab_cdef_u64;
        for _ in 0..500 {
            let e = random_expr(&mut state, 3);
            let text = e.to_string();
            let back = parse(&text).unwrap_or_else(|err| panic!("{text}: {err}"));
            assert_eq!(back, e, "{text}");
        }
    }
}
