use super::{DiagramError, PDDiagram};

/// Parse PD text: tokens `X(a,b,c,d)` separated by whitespace, an optional
/// leading `loops=k` header, and `#` comments to end of line.
pub fn parse_pd(text: &str) -> Result<PDDiagram, DiagramError> {
    let mut scanner = Scanner::new(text);
    let mut tuples = Vec::new();
    let mut starts = Vec::new();
    let mut loops = 0u32;
    loop {
        scanner.skip_blank();
        let (line, col) = scanner.pos();
        match scanner.peek() {
            None => break,
            Some('X') => {
                scanner.bump();
                tuples.push(scanner.tuple()?);
                starts.push((line, col));
            }
            Some('l') if tuples.is_empty() && loops == 0 => {
                scanner.keyword("loops")?;
                scanner.skip_inline();
                scanner.expect('=')?;
                scanner.skip_inline();
                loops = scanner.number()?;
            }
            Some(c) => return Err(scanner.error(format!("unexpected character {c:?}"))),
        }
    }
    PDDiagram::from_tuples(&tuples, loops).map_err(|e| match e {
        DiagramError::LabelRange { crossing, .. }
        | DiagramError::LabelCount { crossing, .. }
        | DiagramError::NonConsecutive { crossing }
        | DiagramError::Orientation { crossing } => {
            let (line, col) = starts[crossing];
            DiagramError::At {
                line,
                col,
                source: Box::new(e),
            }
        }
        other => other,
    })
}

struct Scanner<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> (usize, usize) {
        (self.line, self.col)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, msg: String) -> DiagramError {
        DiagramError::Syntax {
            line: self.line,
            col: self.col,
            msg,
        }
    }

    fn skip_blank(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn skip_inline(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn expect(&mut self, want: char) -> Result<(), DiagramError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.error(format!("expected {want:?}, found end of input"))),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), DiagramError> {
        for w in word.chars() {
            self.expect(w)?;
        }
        Ok(())
    }

    fn number(&mut self) -> Result<u32, DiagramError> {
        let mut digits = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a number, found {c:?}")),
                None => self.error("expected a number, found end of input".into()),
            });
        }
        digits
            .parse()
            .map_err(|_| self.error(format!("number {digits} out of range")))
    }

    fn tuple(&mut self) -> Result<[u32; 4], DiagramError> {
        self.skip_inline();
        self.expect('(')?;
        let mut out = [0u32; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            self.skip_inline();
            let (line, col) = self.pos();
            *slot = self.number()?;
            if *slot == 0 {
                return Err(DiagramError::Syntax {
                    line,
                    col,
                    msg: "edge labels must be positive".into(),
                });
            }
            self.skip_inline();
            self.expect(if k < 3 { ',' } else { ')' })?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whitespace_comments_and_header() {
        let a = parse_pd("# trefoil\nX( 1, 4,2 ,5 )\n  X(3,6,4,1) # two\nX(5,2,6,3)").unwrap();
        let b = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert_eq!(a, b);
        let u = parse_pd("loops=1").unwrap();
        assert_eq!(u.component_count(), 1);
        let l = parse_pd("loops = 2\nX(1,1,2,2)").unwrap();
        assert_eq!(l.component_count(), 3);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_pd("X(1,4,2,5)\nX(3,6,4,1) X(5,2;6,3)") {
            Err(DiagramError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 17)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_pd("X(1,4,2,5)\nX(3,6,4,1) X(5,2,6,9)") {
            Err(DiagramError::At { line, col, source }) => {
                assert_eq!((line, col), (2, 12));
                assert!(matches!(*source, DiagramError::LabelRange { label: 9, .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_pd("  # nothing\n"), Err(DiagramError::Empty));
        assert!(matches!(parse_pd("X(0,1,1,2)"), Err(DiagramError::Syntax { .. })));
        assert!(matches!(parse_pd("Y(1,1,2,2)"), Err(DiagramError::Syntax { .. })));
    }

    #[test]
    fn render_roundtrip() {
        for s in ["X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", "loops=2", "X(1,1,2,2)", "X(4,2,3,1) X(2,4,1,3)"] {
            let d = parse_pd(s).unwrap();
            assert_eq!(parse_pd(&d.render()).unwrap(), d);
        }
        let d = parse_pd("loops=1\nX(1,1,2,2)").unwrap();
        assert_eq!(d.render(), "loops=1\nX(1,1,2,2)");
    }
}
