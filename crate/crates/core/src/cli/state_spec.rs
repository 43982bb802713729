//! Text form of an initial state.
//!
//! ```text
//! spec   = [sign] term { sign term }
//! term   = [weight ["*"]] basis
//! weight = number ["i"] | "i" | "(" [sign] number ["i"] { sign number ["i"] } ")"
//! basis  = "LL" | "LR" | "RL" | "RR"            (any case)
//! sign   = "+" | "-"
//! ```
//!
//! Whitespace is ignored everywhere. A missing weight means 1. Repeated
//! basis tokens add up, and the result is normalized.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::dynamics::TwoQubitState;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpecError {
    /// Byte offset into the original text.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for StateSpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "state spec error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for StateSpecError {}

struct Cursor<'a> {
    /// Non-whitespace characters with their byte offsets.
    chars: Vec<(usize, char)>,
    at: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            at: 0,
            text,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn position(&self) -> usize {
        self.chars.get(self.at).map_or(self.text.len(), |&(p, _)| p)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.at += 1;
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> StateSpecError {
        StateSpecError {
            position: self.position(),
            message: message.into(),
        }
    }

    fn sign(&mut self) -> Option<f64> {
        if self.eat('+') {
            Some(1.0)
        } else if self.eat('-') {
            Some(-1.0)
        } else {
            None
        }
    }

    fn number(&mut self) -> Result<Option<f64>, StateSpecError> {
        let start = self.at;
        let pos = self.position();
        let mut lexeme = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == '.' {
                lexeme.push(c);
                self.at += 1;
            } else {
                break;
            }
        }
        if lexeme.is_empty() {
            return Ok(None);
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let mark = self.at;
            let mut exponent = String::from("e");
            self.at += 1;
            if let Some(s @ ('+' | '-')) = self.peek() {
                exponent.push(s);
                self.at += 1;
            }
            let digits_start = self.at;
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                exponent.push(c);
                self.at += 1;
            }
            if self.at == digits_start {
                self.at = mark;
            } else {
                lexeme.push_str(&exponent);
            }
        }
        match lexeme.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Some(x)),
            _ => {
                self.at = start;
                Err(StateSpecError {
                    position: pos,
                    message: format!("malformed number '{lexeme}'"),
                })
            }
        }
    }

    /// `number ["i"] | "i"`; `None` if neither is present.
    fn scalar(&mut self) -> Result<Option<C64>, StateSpecError> {
        match self.number()? {
            Some(x) if self.eat('i') => Ok(Some(C64::new(0.0, x))),
            Some(x) => Ok(Some(C64::new(x, 0.0))),
            None if self.eat('i') => Ok(Some(C64::new(0.0, 1.0))),
            None => Ok(None),
        }
    }

    fn weight(&mut self) -> Result<Option<C64>, StateSpecError> {
        if !self.eat('(') {
            return self.scalar();
        }
        let mut total = C64::new(0.0, 0.0);
        let mut first = true;
        loop {
            let sign = match self.sign() {
                Some(s) => s,
                None if first => 1.0,
                None => break,
            };
            first = false;
            match self.scalar()? {
                Some(z) => total += z * sign,
                None => return Err(self.error("expected a number inside parentheses")),
            }
        }
        if !self.eat(')') {
            return Err(self.error("expected ')'"));
        }
        Ok(Some(total))
    }

    fn basis(&mut self) -> Result<usize, StateSpecError> {
        let pos = self.position();
        let a = self.bump().map(|c| c.to_ascii_uppercase());
        let b = self.bump().map(|c| c.to_ascii_uppercase());
        match (a, b) {
            (Some('L'), Some('L')) => Ok(0),
            (Some('L'), Some('R')) => Ok(1),
            (Some('R'), Some('L')) => Ok(2),
            (Some('R'), Some('R')) => Ok(3),
            _ => {
                let found: String = self.text[pos..].chars().take(2).collect();
                Err(StateSpecError {
                    position: pos,
                    message: if found.is_empty() {
                        "expected one of LL, LR, RL, RR at end of input".into()
                    } else {
                        format!("unknown token '{found}', expected one of LL, LR, RL, RR")
                    },
                })
            }
        }
    }
}

/// Parses a state such as `"LL+RR"` or `"0.5 LL - 0.5i RR"` and normalizes
/// it.
pub fn parse_state_spec(text: &str) -> Result<TwoQubitState, StateSpecError> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(cur.error("state spec is empty"));
    }
    let mut amps = [C64::new(0.0, 0.0); 4];
    let mut sign = cur.sign().unwrap_or(1.0);
    loop {
        let weight = cur.weight()?.unwrap_or(C64::new(1.0, 0.0));
        cur.eat('*');
        let index = cur.basis()?;
        amps[index] += weight * sign;
        if cur.peek().is_none() {
            break;
        }
        sign = match cur.sign() {
            Some(s) => s,
            None => return Err(cur.error("expected '+' or '-' between terms")),
        };
    }
    TwoQubitState::normalized(amps).map_err(|_| StateSpecError {
        position: 0,
        message: "state is the zero vector".into(),
    })
}
