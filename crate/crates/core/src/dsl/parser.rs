//! Recursive-descent parser for the curve language.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::{BinOp, CurveSpec, Expr, Func, Rational, PARAM};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(f64, bool),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Equals,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(v, _) => format!("number `{v}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> std::result::Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push(Token { tok, line: l0, column: c0 });
            i += 1;
            column += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == '.' {
            let mut integral = true;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                integral &= chars[i] != '.';
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    integral = false;
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            let value = s.parse::<f64>().map_err(|_| ParseError {
                line: l0,
                column: c0,
                message: format!("malformed number `{s}`"),
                expected: vec![],
            })?;
            tokens.push(Token { tok: Tok::Number(value, integral), line: l0, column: c0 });
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            tokens.push(Token { tok: Tok::Ident(s), line: l0, column: c0 });
        } else {
            return Err(ParseError {
                line: l0,
                column: c0,
                message: format!("unexpected character `{c}`"),
                expected: vec![],
            });
        }
        column += i - start;
    }
    tokens.push(Token { tok: Tok::Eof, line, column });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok, context: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            let found = self.peek().describe();
            Err(self.error(format!("{context}: found {found}"), &[&tok.describe()]))
        }
    }

    fn curve(&mut self) -> PResult<(Expr, Expr, BTreeMap<String, f64>)> {
        self.expect(Tok::LParen, "a curve starts with `(`")?;
        let x = self.component("first")?;
        self.expect(Tok::Comma, "expected `,` after the first component")?;
        let y = self.component("second")?;
        self.expect(Tok::RParen, "expected `)` after the second component")?;
        let mut params = BTreeMap::new();
        if let Tok::Ident(w) = self.peek() {
            if w == "with" {
                self.next();
                loop {
                    let (name, value) = self.binding()?;
                    params.insert(name, value);
                    if *self.peek() == Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
            }
        }
        if *self.peek() != Tok::Eof {
            let found = self.peek().describe();
            return Err(self.error(format!("trailing input: found {found}"), &["`with`", "end of input"]));
        }
        Ok((x, y, params))
    }

    fn component(&mut self, which: &str) -> PResult<Expr> {
        if matches!(self.peek(), Tok::Comma | Tok::RParen | Tok::Eof) {
            let found = self.peek().describe();
            return Err(self.error(
                format!("missing {which} component: found {found}"),
                &["expression"],
            ));
        }
        self.expr()
    }

    fn binding(&mut self) -> PResult<(String, f64)> {
        let name = match self.next().tok {
            Tok::Ident(s) if s != PARAM => s,
            _ => {
                self.pos -= 1;
                return Err(self.error("expected a parameter name", &["identifier"]));
            }
        };
        self.expect(Tok::Equals, "expected `=` in binding")?;
        let sign = if *self.peek() == Tok::Minus {
            self.next();
            -1.0
        } else {
            1.0
        };
        match self.peek().clone() {
            Tok::Number(v, _) => {
                self.next();
                Ok((name, sign * v))
            }
            other => Err(self.error(format!("expected a number, found {}", other.describe()), &["number"])),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.term()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.next();
            let r = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), r));
        }
        Ok(base)
    }

    fn integer(&mut self) -> PResult<i64> {
        let sign = if *self.peek() == Tok::Minus {
            self.next();
            -1
        } else {
            1
        };
        match self.peek().clone() {
            Tok::Number(v, true) if v.abs() < 1e15 => {
                self.next();
                Ok(sign * v as i64)
            }
            other => Err(self.error(
                format!("exponents must be integers or integer ratios, found {}", other.describe()),
                &["integer"],
            )),
        }
    }

    fn exponent(&mut self) -> PResult<Rational> {
        if *self.peek() == Tok::LParen {
            self.next();
            let num = self.integer()?;
            let mut den = 1;
            if *self.peek() == Tok::Slash {
                self.next();
                let at = self.pos;
                den = self.integer()?;
                if den == 0 {
                    self.pos = at;
                    return Err(self.error("zero denominator in exponent", &["nonzero integer"]));
                }
            }
            self.expect(Tok::RParen, "expected `)` closing the exponent")?;
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::new(self.integer()?, 1))
        }
    }

    fn atom(&mut self) -> PResult<Expr> {
        let token = self.next();
        match token.tok {
            Tok::Number(v, _) => Ok(Expr::Literal(v)),
            Tok::Ident(name) => {
                if let Some(func) = Func::from_name(&name) {
                    self.expect(Tok::LParen, &format!("`{name}` takes a parenthesized argument"))?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, &format!("expected `)` closing `{name}(`"))?;
                    Ok(Expr::Call(func, Box::new(arg)))
                } else if name == PARAM {
                    Ok(Expr::Param)
                } else {
                    Ok(Expr::Const(name))
                }
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "expected `)`")?;
                Ok(e)
            }
            other => {
                self.pos -= 1;
                Err(self.error(
                    format!("expected an expression, found {}", other.describe()),
                    &["number", "identifier", "`(`", "`-`"],
                ))
            }
        }
    }
}

fn parse_raw(text: &str) -> PResult<(Expr, Expr, BTreeMap<String, f64>)> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    p.curve()
}

/// Parse a single expression in `t`.
pub fn parse_expr(text: &str) -> std::result::Result<Expr, ParseError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        let found = p.peek().describe();
        return Err(p.error(format!("trailing input: found {found}"), &["operator", "end of input"]));
    }
    Ok(e)
}

/// Parse a curve definition; every constant must be bound by its `with` clause.
pub fn parse_curve(text: &str) -> Result<CurveSpec> {
    parse_curve_with(text, &BTreeMap::new())
}

/// Parse a curve definition with extra bindings, which take precedence over
/// the `with` clause.
pub fn parse_curve_with(text: &str, extra: &BTreeMap<String, f64>) -> Result<CurveSpec> {
    let (x, y, mut params) = parse_raw(text)?;
    params.extend(extra.iter().map(|(k, v)| (k.clone(), *v)));
    let spec = CurveSpec {
        x,
        y,
        params,
        label: text.trim().to_string(),
    };
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn parse_err(text: &str) -> ParseError {
        match parse_curve(text) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn missing_second_component() {
        let e = parse_err("(t,)");
        assert!(e.message.contains("second component"), "{e}");
        assert_eq!((e.line, e.column), (1, 4));
    }

    #[test]
    fn positions_across_lines() {
        let e = parse_err("(t,\n  t + * 2)");
        assert_eq!((e.line, e.column), (2, 7));
    }

    #[test]
    fn zero_denominator() {
        let e = parse_err("(t^(1/0), t)");
        assert!(e.message.contains("zero denominator"));
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse_expr("1 - 2 - 3 * 4 / 5").unwrap();
        let m = std::collections::BTreeMap::new();
        assert!((e.eval(0.0, &m).unwrap() - (1.0 - 2.0 - 12.0 / 5.0)).abs() < 1e-15);
        // unary minus binds looser than ^
        assert_eq!(parse_expr("-t^2").unwrap().eval(3.0, &m).unwrap(), -9.0);
        assert_eq!(parse_expr("2^3").unwrap().eval(0.0, &m).unwrap(), 8.0);
    }

    #[test]
    fn bindings() {
        let spec = parse_curve("(a*t, b*t^2) with a=2, b=-0.5").unwrap();
        assert_eq!(spec.params["a"], 2.0);
        assert_eq!(spec.params["b"], -0.5);
        assert!(parse_curve("(t, t) with t=1").is_err());
    }

    #[test]
    fn unknown_function_is_a_constant_error() {
        assert!(parse_curve("(foo(t), t)").is_err());
        assert!(parse_curve("(t, t) extra").is_err());
    }
}
