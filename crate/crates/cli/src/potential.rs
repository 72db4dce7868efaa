//! Parser for potential expressions such as `10*exp(-9r^2) -5*exp(-r^2)` or `r^2`.

/// Sum of Gaussian terms `(c, a)` for `c·exp(−a r²)` plus a coefficient of `r²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    pub gaussians: Vec<(f64, f64)>,
    pub r2: f64,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), String> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(format!("expected '{lit}' at position {}", self.pos + 1))
        }
    }

    /// Unsigned decimal number with optional exponent, if one starts here.
    fn number(&mut self) -> Result<Option<f64>, String> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9' | b'.')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            let digits = self.pos;
            while matches!(self.peek(), Some(b'0'..=b'9')) {
                self.pos += 1;
            }
            if self.pos == digits {
                // not an exponent after all, e.g. `2exp(...)`
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        text.parse::<f64>()
            .map(Some)
            .map_err(|_| format!("invalid number '{text}'"))
    }
}

pub fn parse(expr: &str) -> Result<Expression, String> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty potential expression".into());
    }
    let mut cur = Cursor {
        s: compact.as_bytes(),
        pos: 0,
    };
    let mut out = Expression {
        gaussians: Vec::new(),
        r2: 0.0,
    };
    while cur.peek().is_some() {
        let sign = if cur.eat("-") {
            -1.0
        } else {
            cur.eat("+");
            1.0
        };
        let coeff = match cur.number()? {
            Some(c) => {
                cur.eat("*");
                c
            }
            None => 1.0,
        };
        if cur.eat("exp(") {
            cur.expect("-")?;
            let a = match cur.number()? {
                Some(a) => {
                    cur.eat("*");
                    a
                }
                None => 1.0,
            };
            cur.expect("r^2")?;
            cur.expect(")")?;
            if !(a > 0.0 && a.is_finite()) {
                return Err(format!("exponent must be positive, got {a}"));
            }
            out.gaussians.push((sign * coeff, a));
        } else if cur.eat("r^2") {
            out.r2 += sign * coeff;
        } else {
            return Err(format!(
                "expected 'exp(-a r^2)' or 'r^2' at position {} of '{compact}'",
                cur.pos + 1
            ));
        }
    }
    Ok(out)
}
