use super::{Diagnostic, DiagnosticKind, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// `@x`, a coordinate vector field.
    At(String),
    Num(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
    Plus,
    Minus,
    Star,
    StarStar,
    Slash,
    Caret,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::At(s) => format!("`@{s}`"),
            Tok::Num(s) => format!("number `{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Eq => "=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::StarStar => "**",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::Ident(_) => "identifier",
            Tok::At(_) => "@name",
            Tok::Num(_) => "number",
            Tok::Eof => "end of input",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(start, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c == '#' || (c == '/' && src[start..].starts_with("//")) {
            while let Some(&(_, c)) = it.peek() {
                if c == '\n' {
                    break;
                }
                it.next();
            }
            continue;
        }
        let take_ident = |it: &mut std::iter::Peekable<std::str::CharIndices<'_>>, from: usize| {
            let mut end = from;
            while let Some(&(i, c)) = it.peek() {
                if !is_ident_char(c) {
                    break;
                }
                end = i + c.len_utf8();
                it.next();
            }
            end
        };
        let tok = if is_ident_start(c) {
            let end = take_ident(&mut it, start);
            Token {
                tok: Tok::Ident(src[start..end].to_string()),
                span: Span::new(start, end),
            }
        } else if c == '@' {
            it.next();
            match it.peek() {
                Some(&(s, c)) if is_ident_start(c) => {
                    let end = take_ident(&mut it, s);
                    Token {
                        tok: Tok::At(src[s..end].to_string()),
                        span: Span::new(start, end),
                    }
                }
                _ => {
                    return Err(Diagnostic::new(
                        DiagnosticKind::SyntaxError {
                            expected: vec!["coordinate name after `@`".into()],
                        },
                        "`@` must be followed by a coordinate name",
                        Span::new(start, start + 1),
                    ))
                }
            }
        } else if c.is_ascii_digit() {
            let mut end = start;
            let mut seen_dot = false;
            while let Some(&(i, c)) = it.peek() {
                if c.is_ascii_digit() {
                    end = i + 1;
                    it.next();
                } else if c == '.' && !seen_dot {
                    let next_digit = src[i + 1..].chars().next().is_some_and(|d| d.is_ascii_digit());
                    if !next_digit {
                        break;
                    }
                    seen_dot = true;
                    end = i + 1;
                    it.next();
                } else {
                    break;
                }
            }
            Token {
                tok: Tok::Num(src[start..end].to_string()),
                span: Span::new(start, end),
            }
        } else {
            it.next();
            let single = |t| Token {
                tok: t,
                span: Span::new(start, start + 1),
            };
            match c {
                '(' => single(Tok::LParen),
                ')' => single(Tok::RParen),
                '{' => single(Tok::LBrace),
                '}' => single(Tok::RBrace),
                '[' => single(Tok::LBracket),
                ']' => single(Tok::RBracket),
                ',' => single(Tok::Comma),
                ';' => single(Tok::Semi),
                '=' => single(Tok::Eq),
                '+' => single(Tok::Plus),
                '-' => single(Tok::Minus),
                '/' => single(Tok::Slash),
                '^' => single(Tok::Caret),
                '*' => {
                    if matches!(it.peek(), Some(&(_, '*'))) {
                        it.next();
                        Token {
                            tok: Tok::StarStar,
                            span: Span::new(start, start + 2),
                        }
                    } else {
                        single(Tok::Star)
                    }
                }
                other => {
                    return Err(Diagnostic::new(
                        DiagnosticKind::SyntaxError { expected: vec![] },
                        format!("unexpected character {other:?}"),
                        Span::new(start, start + other.len_utf8()),
                    ))
                }
            }
        };
        out.push(tok);
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(src.len(), src.len()),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            kinds("form w = dx ^ @y ** 2; # note"),
            vec![
                Tok::Ident("form".into()),
                Tok::Ident("w".into()),
                Tok::Eq,
                Tok::Ident("dx".into()),
                Tok::Caret,
                Tok::At("y".into()),
                Tok::StarStar,
                Tok::Num("2".into()),
                Tok::Semi,
                Tok::Eof
            ]
        );
        assert_eq!(kinds("1.5 30"), vec![Tok::Num("1.5".into()), Tok::Num("30".into()), Tok::Eof]);
    }

    #[test]
    fn bad_character_has_span() {
        let err = tokenize("chart (x); $").unwrap_err();
        assert_eq!(err.span, Span::new(11, 12));
    }
}
