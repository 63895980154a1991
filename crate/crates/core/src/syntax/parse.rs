use num_complex::Complex64;

use crate::error::SyntaxError;
use crate::expr::{normalize, DistExpr};
use crate::oracle::SchwartzFn;

pub const MAX_INPUT: usize = 64 * 1024;
pub const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Imag(f64),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(_) => "number".into(),
        Tok::Imag(_) => "imaginary number".into(),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let ident_char = |c: char| c.is_ascii_alphanumeric() || c == '_';
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: tl,
                col: tc,
            })
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            _ => None,
        };
        if let Some(tok) = single {
            push(&mut out, tok);
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == '.' {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value: f64 = text.parse().map_err(|_| SyntaxError::Parse {
                line: tl,
                col: tc,
                expected: "a decimal number".into(),
            })?;
            let imaginary = i < chars.len()
                && chars[i] == 'i'
                && !chars.get(i + 1).is_some_and(|&c| ident_char(c));
            if imaginary {
                i += 1;
                push(&mut out, Tok::Imag(value));
            } else {
                push(&mut out, Tok::Num(value));
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && ident_char(chars[i]) {
                i += 1;
            }
            push(&mut out, Tok::Ident(chars[start..i].iter().collect()));
        } else {
            return Err(SyntaxError::Parse {
                line: tl,
                col: tc,
                expected: format!("expression (found unexpected character {c:?})"),
            });
        }
        col += i - start;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

/// A parsed operand: either a pure number or a distribution.
enum Node {
    Scalar(Complex64),
    Expr(DistExpr),
}

impl Node {
    fn into_expr(self) -> DistExpr {
        match self {
            Node::Scalar(c) => DistExpr::One.scale(c),
            Node::Expr(e) => e,
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        let (line, col) = self.here();
        Err(SyntaxError::Parse {
            line,
            col,
            expected: format!("{expected}, found {}", describe(self.peek())),
        })
    }

    fn semantic<T>(&self, at: (usize, usize), message: String) -> Result<T, SyntaxError> {
        Err(SyntaxError::Semantic {
            line: at.0,
            col: at.1,
            message,
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&describe(&tok))
        }
    }

    fn enter(&mut self) -> Result<(), SyntaxError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let (line, col) = self.here();
            return Err(SyntaxError::TooDeep {
                line,
                col,
                limit: MAX_DEPTH,
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Node, SyntaxError> {
        self.enter()?;
        let mut terms = vec![self.term(false)?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term(false)?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(self.term(true)?);
                }
                _ => break,
            }
        }
        self.depth -= 1;
        if terms.len() == 1 {
            return Ok(terms.pop().unwrap());
        }
        if terms.iter().all(|t| matches!(t, Node::Scalar(_))) {
            let total = terms
                .into_iter()
                .map(|t| match t {
                    Node::Scalar(c) => c,
                    Node::Expr(_) => unreachable!(),
                })
                .sum();
            return Ok(Node::Scalar(total));
        }
        Ok(Node::Expr(DistExpr::Sum(
            terms.into_iter().map(Node::into_expr).collect(),
        )))
    }

    /// `negate` is set after a binary minus: the leading scalar factor is
    /// negated, or the term is scaled by −1 if it has none.
    fn term(&mut self, negate: bool) -> Result<Node, SyntaxError> {
        let mut factors = vec![(self.here(), self.factor()?)];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push((self.here(), self.factor()?));
        }
        let mut negate = negate;
        if negate {
            if let Node::Scalar(c) = &mut factors[0].1 {
                *c = -*c;
                negate = false;
            }
        }
        let (_, mut acc) = factors.pop().unwrap();
        while let Some((at, f)) = factors.pop() {
            acc = match (f, acc) {
                (Node::Scalar(a), Node::Scalar(b)) => Node::Scalar(a * b),
                (Node::Scalar(c), Node::Expr(e)) | (Node::Expr(e), Node::Scalar(c)) => {
                    Node::Expr(e.scale(c))
                }
                (Node::Expr(DistExpr::CExp(xi)), Node::Expr(e))
                | (Node::Expr(e), Node::Expr(DistExpr::CExp(xi))) => Node::Expr(e.modulate(xi)),
                (Node::Expr(_), Node::Expr(_)) => {
                    return self.semantic(
                        at,
                        "product of two distributions is undefined; one factor must be a number or cexp(..)".into(),
                    )
                }
            };
        }
        if negate {
            acc = Node::Expr(acc.into_expr().scale(-1.0));
        }
        Ok(acc)
    }

    fn real(&mut self) -> Result<f64, SyntaxError> {
        let sign = match self.peek() {
            Tok::Minus => {
                self.bump();
                -1.0
            }
            Tok::Plus => {
                self.bump();
                1.0
            }
            _ => 1.0,
        };
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(sign * v)
            }
            _ => self.fail("real number"),
        }
    }

    /// `real [("+"|"-") real "i"] | real "i"`, each real optionally signed.
    fn complex(&mut self) -> Result<Complex64, SyntaxError> {
        let sign = match self.peek() {
            Tok::Minus => {
                self.bump();
                -1.0
            }
            Tok::Plus => {
                self.bump();
                1.0
            }
            _ => 1.0,
        };
        match self.peek().clone() {
            Tok::Imag(v) => {
                self.bump();
                Ok(Complex64::new(0.0, sign * v))
            }
            Tok::Num(re) => {
                self.bump();
                let re = sign * re;
                let im_sign = match self.peek() {
                    Tok::Plus => 1.0,
                    Tok::Minus => -1.0,
                    _ => return Ok(Complex64::new(re, 0.0)),
                };
                if let Tok::Imag(im) = *self.peek_at(1) {
                    self.bump();
                    self.bump();
                    Ok(Complex64::new(re, im_sign * im))
                } else {
                    Ok(Complex64::new(re, 0.0))
                }
            }
            _ => self.fail("number"),
        }
    }

    fn arg_expr(&mut self) -> Result<DistExpr, SyntaxError> {
        Ok(self.expr()?.into_expr())
    }

    fn factor(&mut self) -> Result<Node, SyntaxError> {
        let at = self.here();
        match self.peek().clone() {
            Tok::Num(_) | Tok::Imag(_) | Tok::Minus | Tok::Plus => {
                if matches!(self.peek(), Tok::Minus | Tok::Plus)
                    && !matches!(self.peek_at(1), Tok::Num(_) | Tok::Imag(_))
                {
                    // Unary sign on a distribution.
                    let neg = self.bump() == Tok::Minus;
                    self.enter()?;
                    let f = self.factor()?;
                    self.depth -= 1;
                    return Ok(match (neg, f) {
                        (false, f) => f,
                        (true, Node::Scalar(c)) => Node::Scalar(-c),
                        (true, Node::Expr(e)) => Node::Expr(e.scale(-1.0)),
                    });
                }
                Ok(Node::Scalar(self.complex()?))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                let atom = match name.as_str() {
                    "rect" => Some(DistExpr::Rect),
                    "sinc" => Some(DistExpr::Sinc),
                    "gauss" => Some(DistExpr::Gauss),
                    "one" => Some(DistExpr::One),
                    "comb" => Some(DistExpr::Comb),
                    _ => None,
                };
                if let Some(a) = atom {
                    return Ok(Node::Expr(a));
                }
                let real_call: Option<fn(f64) -> DistExpr> = match name.as_str() {
                    "delta" => Some(DistExpr::Delta),
                    "cexp" => Some(DistExpr::CExp),
                    "cos2pi" => Some(DistExpr::Cos),
                    "sin2pi" => Some(DistExpr::Sin),
                    _ => None,
                };
                if let Some(make) = real_call {
                    self.expect(Tok::LParen)?;
                    let v = self.real()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Node::Expr(make(v)));
                }
                match name.as_str() {
                    "shift" | "dilate" => {
                        self.expect(Tok::LParen)?;
                        let e = self.arg_expr()?;
                        self.expect(Tok::Comma)?;
                        let at_arg = self.here();
                        let v = self.real()?;
                        self.expect(Tok::RParen)?;
                        if name == "shift" {
                            Ok(Node::Expr(e.shift(v)))
                        } else if v > 0.0 && v.is_finite() {
                            Ok(Node::Expr(e.dilate(v)))
                        } else {
                            self.semantic(
                                at_arg,
                                format!("dilation factor must be positive, got {v}"),
                            )
                        }
                    }
                    "conj" | "re" | "im" => {
                        self.expect(Tok::LParen)?;
                        let e = self.arg_expr()?;
                        self.expect(Tok::RParen)?;
                        Ok(Node::Expr(match name.as_str() {
                            "conj" => e.conj(),
                            "re" => e.re(),
                            _ => e.im(),
                        }))
                    }
                    _ => self.semantic(at, format!("unknown name '{name}'")),
                }
            }
            _ => self.fail("expression"),
        }
    }
}

fn parser(text: &str) -> Result<Parser, SyntaxError> {
    if text.len() > MAX_INPUT {
        return Err(SyntaxError::TooLong(text.len()));
    }
    Ok(Parser {
        toks: lex(text)?,
        pos: 0,
        depth: 0,
    })
}

/// Parses `text` into an expression tree exactly as written.
pub fn parse_expr_tree(text: &str) -> Result<DistExpr, SyntaxError> {
    let mut p = parser(text)?;
    let node = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("'+', '-', '*' or end of input");
    }
    let e = node.into_expr();
    if let Err(err) = e.validate() {
        return Err(SyntaxError::Semantic {
            line: 1,
            col: 1,
            message: err.to_string(),
        });
    }
    Ok(e)
}

/// Parses `text` and normalizes the result.
pub fn parse_expr(text: &str) -> Result<DistExpr, SyntaxError> {
    parse_expr_tree(text).map(|e| normalize(&e))
}

/// Parses `poly(c0,c1,…)*gauss(a,b)*mod(omega)`. Factors may come in any
/// order; `poly` defaults to `1` and `mod` to `0`.
pub fn parse_fnspec(text: &str) -> Result<SchwartzFn, SyntaxError> {
    let mut p = parser(text)?;
    let mut coeffs: Option<Vec<Complex64>> = None;
    let mut gauss: Option<(f64, f64)> = None;
    let mut omega: Option<f64> = None;
    let start = p.here();
    loop {
        let at = p.here();
        let name = match p.peek().clone() {
            Tok::Ident(name) => {
                p.bump();
                name
            }
            _ => return p.fail("'poly', 'gauss' or 'mod'"),
        };
        p.expect(Tok::LParen)?;
        let dup = |p: &Parser| p.semantic(at, format!("'{name}' given twice"));
        match name.as_str() {
            "poly" => {
                if coeffs.is_some() {
                    return dup(&p);
                }
                let mut cs = vec![p.complex()?];
                while *p.peek() == Tok::Comma {
                    p.bump();
                    cs.push(p.complex()?);
                }
                coeffs = Some(cs);
            }
            "gauss" => {
                if gauss.is_some() {
                    return dup(&p);
                }
                let a = p.real()?;
                p.expect(Tok::Comma)?;
                gauss = Some((a, p.real()?));
            }
            "mod" => {
                if omega.is_some() {
                    return dup(&p);
                }
                omega = Some(p.real()?);
            }
            _ => {
                return Err(SyntaxError::Parse {
                    line: at.0,
                    col: at.1,
                    expected: format!("'poly', 'gauss' or 'mod', found '{name}'"),
                })
            }
        }
        p.expect(Tok::RParen)?;
        match p.peek() {
            Tok::Star => {
                p.bump();
            }
            Tok::End => break,
            _ => return p.fail("'*' or end of input"),
        }
    }
    let Some((a, b)) = gauss else {
        return p.semantic(start, "test function needs a gauss(a,b) factor".into());
    };
    let coeffs = coeffs.unwrap_or_else(|| vec![Complex64::new(1.0, 0.0)]);
    SchwartzFn::new(coeffs, a, b, omega.unwrap_or(0.0)).map_err(|e| SyntaxError::Semantic {
        line: start.0,
        col: start.1,
        message: e.to_string(),
    })
}
