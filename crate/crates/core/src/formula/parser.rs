use super::Formula;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let column = text[..pos].chars().count() + 1;
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '!' | '~' => {
                chars.next();
                out.push((column, Token::Not));
            }
            '&' => {
                chars.next();
                out.push((column, Token::And));
            }
            '|' => {
                chars.next();
                out.push((column, Token::Or));
            }
            '(' => {
                chars.next();
                out.push((column, Token::Open));
            }
            ')' => {
                chars.next();
                out.push((column, Token::Close));
            }
            '-' => {
                chars.next();
                match chars.next() {
                    Some((_, '>')) => out.push((column, Token::Implies)),
                    _ => {
                        return Err(Error::Syntax {
                            column,
                            message: "expected `->`".into(),
                        })
                    }
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((column, Token::Ident(name)));
            }
            other => {
                return Err(Error::Syntax {
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(c, _)| *c)
            .unwrap_or(self.end_column)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    // implication := disjunction ("->" implication)?
    fn implication(&mut self) -> Result<Formula> {
        let left = self.disjunction()?;
        if self.peek() == Some(&Token::Implies) {
            self.pos += 1;
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut left = self.conjunction()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(name))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.implication()?;
                if self.peek() != Some(&Token::Close) {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.error("expected an atom, `!` or `(`"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses a formula, eliminating `&` and `|`.
///
/// Precedence from tightest: `!`/`~`, `&`, `|`, `->`. Implication is
/// right-associative, the binary sugar left-associative.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end_column: text.chars().count() + 1,
    };
    let f = parser.implication()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn implication_is_a_plain_constructor() {
        assert_eq!(
            parse_formula("a -> b").unwrap(),
            Formula::implies(a("a"), a("b"))
        );
    }

    #[test]
    fn conjunction_desugars() {
        assert_eq!(
            parse_formula("a & b").unwrap(),
            Formula::not(Formula::implies(a("a"), Formula::not(a("b"))))
        );
    }

    #[test]
    fn disjunction_desugars() {
        assert_eq!(
            parse_formula("a | b").unwrap(),
            Formula::implies(Formula::not(a("a")), a("b"))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_formula("a -> b -> c").unwrap(),
            Formula::implies(a("a"), Formula::implies(a("b"), a("c")))
        );
        assert_eq!(
            parse_formula("~a & b | c").unwrap(),
            Formula::or(Formula::and(Formula::not(a("a")), a("b")), a("c"))
        );
        assert_eq!(
            parse_formula("  ( a|b )&c ").unwrap(),
            Formula::and(Formula::or(a("a"), a("b")), a("c"))
        );
    }

    #[test]
    fn errors_carry_column() {
        match parse_formula("a & & b") {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        match parse_formula("(a -> b") {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 8),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("a - b").is_err());
        assert!(parse_formula("a b").is_err());
        assert!(parse_formula("").is_err());
        assert!(parse_formula("1a").is_err());
    }
}
