//! Problem files: a line-oriented sectioned text format.
//!
//! ```text
//! # comments run to the end of the line
//! [group]
//! generators = x y
//! relator = x y x^-1 y^-1
//!
//! [target]
//! family = SL 2
//!
//! [representation]
//! x = [[1,1],[0,1]]
//! y = [[1,2],[0,1]]
//! ```
//!
//! `[group]` may instead say `surface = g`. The optional `[hom]` section
//! describes a source group in the same way as `[group]`, followed by one
//! `name -> word` line per source generator, with words in the `[group]`
//! generators. The optional `[form]` section has a single `gram = <matrix>`.

use std::fmt;

use crate::arith::Mat;
use crate::error::Error;
use crate::groups::GroupFamily;
use crate::presentation::{GroupHom, GroupPresentation, Word};
use crate::representation::Representation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based; line 0 means the end of the file.
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "end of input: {}", self.message)
        } else {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub presentation: GroupPresentation,
    pub family: GroupFamily,
    pub images: Vec<Mat>,
    pub hom: Option<GroupHom>,
    pub gram: Option<Mat>,
}

impl Problem {
    /// Shapes are already checked, so this only fails on membership or
    /// relators at validation time.
    pub fn representation(&self) -> Representation {
        Representation::new(self.presentation.clone(), self.family, self.images.clone())
            .expect("shapes were checked while parsing")
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Group,
    Target,
    Representation,
    Hom,
    Form,
}

/// A line with its number and the byte offset of the trimmed content.
#[derive(Clone, Copy)]
struct Line<'a> {
    number: usize,
    text: &'a str,
    raw: &'a str,
}

impl<'a> Line<'a> {
    fn err_at(&self, part: &str, offset: usize, message: impl Into<String>) -> ParseError {
        let start = part.as_ptr() as usize - self.raw.as_ptr() as usize + offset;
        ParseError {
            line: self.number,
            column: self.raw[..start.min(self.raw.len())].chars().count() + 1,
            message: message.into(),
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        self.err_at(self.text, 0, message)
    }

    /// Splits `key <sep> value`, trimming both; positions stay relative to `raw`.
    fn split(&self, sep: &str) -> Option<(&'a str, &'a str)> {
        let (k, v) = self.text.split_once(sep)?;
        Some((k.trim(), v.trim()))
    }
}

#[derive(Default)]
struct GroupSpec<'a> {
    header: usize,
    generators: Option<(Line<'a>, Vec<String>)>,
    surface: Option<(Line<'a>, usize)>,
    relators: Vec<(Line<'a>, &'a str)>,
}

impl<'a> GroupSpec<'a> {
    fn line(&mut self, line: Line<'a>) -> Result<bool, ParseError> {
        let Some((key, value)) = line.split("=") else {
            return Ok(false);
        };
        match key {
            "generators" => {
                if self.generators.is_some() || self.surface.is_some() {
                    return Err(line.err("generators given twice"));
                }
                let names: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                self.generators = Some((line, names));
            }
            "surface" => {
                if self.generators.is_some() || self.surface.is_some() {
                    return Err(line.err("generators given twice"));
                }
                let g: usize = value
                    .parse()
                    .map_err(|_| line.err_at(value, 0, format!("bad genus `{value}`")))?;
                self.surface = Some((line, g));
            }
            "relator" => self.relators.push((line, value)),
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn build(&self, what: &str) -> Result<GroupPresentation, ParseError> {
        let at_header = |message: String| ParseError {
            line: self.header,
            column: 1,
            message,
        };
        if let Some((line, g)) = &self.surface {
            if let Some((l, _)) = self.relators.first() {
                return Err(l.err("a surface group takes no explicit relators"));
            }
            return GroupPresentation::surface(*g).map_err(|e| line.err(e.to_string()));
        }
        let Some((line, names)) = &self.generators else {
            return Err(at_header(format!("{what} has no `generators` or `surface` line")));
        };
        let free = GroupPresentation::new(names.clone(), Vec::new()).map_err(|e| line.err(e.to_string()))?;
        let relators = self
            .relators
            .iter()
            .map(|(l, text)| parse_word(&free, l, text))
            .collect::<Result<Vec<_>, _>>()?;
        for (w, (l, text)) in relators.iter().zip(&self.relators) {
            if w.is_empty() {
                return Err(l.err_at(text, 0, "relator reduces to the empty word"));
            }
        }
        GroupPresentation::new(names.clone(), relators).map_err(|e| line.err(e.to_string()))
    }
}

/// Word parsing with the column of the first bad token.
fn parse_word(p: &GroupPresentation, line: &Line, text: &str) -> Result<Word, ParseError> {
    p.parse_word(text).map_err(|e| {
        let mut offset = 0;
        for tok in text.split_whitespace() {
            let at = text[offset..].find(tok).map_or(offset, |i| offset + i);
            if p.parse_word(tok).is_err() {
                return line.err_at(text, at, e.to_string());
            }
            offset = at + tok.len();
        }
        line.err_at(text, 0, e.to_string())
    })
}

fn parse_matrix(line: &Line, text: &str) -> Result<Mat, ParseError> {
    text.parse::<Mat>()
        .map_err(|e| line.err_at(text, e.offset, e.message.clone()))
}

pub fn parse_problem(input: &str) -> Result<Problem, ParseError> {
    let mut section = Section::None;
    let mut group = GroupSpec::default();
    let mut source = GroupSpec::default();
    let mut family: Option<GroupFamily> = None;
    let mut target_line = 0;
    let mut rep_header = 0;
    let mut rep_lines: Vec<(Line, &str, &str)> = Vec::new();
    let mut hom_lines: Vec<(Line, &str, &str)> = Vec::new();
    let mut hom_seen = false;
    let mut gram: Option<Mat> = None;

    for (i, raw) in input.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let text = content.trim();
        if text.is_empty() {
            continue;
        }
        let line = Line {
            number: i + 1,
            text,
            raw,
        };
        if let Some(name) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            section = match name.trim() {
                "group" => {
                    group.header = line.number;
                    Section::Group
                }
                "target" => {
                    target_line = line.number;
                    Section::Target
                }
                "representation" => {
                    rep_header = line.number;
                    Section::Representation
                }
                "hom" => {
                    hom_seen = true;
                    source.header = line.number;
                    Section::Hom
                }
                "form" => Section::Form,
                other => return Err(line.err(format!("unknown section `[{other}]`"))),
            };
            continue;
        }
        match section {
            Section::None => return Err(line.err("content before the first section")),
            Section::Group => {
                if !group.line(line)? {
                    return Err(line.err("expected `generators = …`, `relator = …` or `surface = …`"));
                }
            }
            Section::Target => {
                let value = match line.split("=") {
                    Some(("family", v)) => v,
                    Some(_) => return Err(line.err("expected `family = <kind> <size>`")),
                    None => text,
                };
                family = Some(value.parse().map_err(|e: Error| line.err_at(value, 0, e.to_string()))?);
            }
            Section::Representation => {
                let Some((name, value)) = line.split("=") else {
                    return Err(line.err("expected `generator = [[…]]`"));
                };
                rep_lines.push((line, name, value));
            }
            Section::Hom => {
                if let Some((name, word)) = line.split("->") {
                    hom_lines.push((line, name, word));
                } else if !source.line(line)? {
                    return Err(line.err("expected `name -> word` or a group line"));
                }
            }
            Section::Form => match line.split("=") {
                Some(("gram", v)) => gram = Some(parse_matrix(&line, v)?),
                _ => return Err(line.err("expected `gram = [[…]]`")),
            },
        }
    }

    let eof = |message: &str| ParseError {
        line: 0,
        column: 0,
        message: message.to_string(),
    };
    if group.header == 0 {
        return Err(eof("missing [group] section"));
    }
    let presentation = group.build("[group]")?;
    let Some(family) = family else {
        return Err(if target_line == 0 {
            eof("missing [target] section")
        } else {
            ParseError {
                line: target_line,
                column: 1,
                message: "[target] names no family".into(),
            }
        });
    };

    let n = family.size();
    let mut images: Vec<Option<Mat>> = vec![None; presentation.generator_count()];
    for (line, name, value) in &rep_lines {
        let Some(g) = presentation.generator_index(name) else {
            return Err(line.err_at(name, 0, format!("unknown generator `{name}`")));
        };
        if images[g].is_some() {
            return Err(line.err_at(name, 0, format!("`{name}` assigned twice")));
        }
        let m = parse_matrix(line, value)?;
        if m.rows() != n || m.cols() != n {
            return Err(line.err_at(
                value,
                0,
                format!("`{name}` is {}x{}, but {family} needs {n}x{n}", m.rows(), m.cols()),
            ));
        }
        images[g] = Some(m);
    }
    if let Some(k) = images.iter().position(Option::is_none) {
        let message = format!("no image for generator `{}`", presentation.generator_names()[k]);
        return Err(if rep_header == 0 {
            eof(&message)
        } else {
            ParseError {
                line: rep_header,
                column: 1,
                message,
            }
        });
    }
    let images: Vec<Mat> = images.into_iter().map(Option::unwrap).collect();

    let hom = if hom_seen {
        let src = source.build("[hom]")?;
        let mut words: Vec<Option<Word>> = vec![None; src.generator_count()];
        for (line, name, text) in &hom_lines {
            let Some(g) = src.generator_index(name) else {
                return Err(line.err_at(name, 0, format!("unknown source generator `{name}`")));
            };
            if words[g].is_some() {
                return Err(line.err_at(name, 0, format!("`{name}` mapped twice")));
            }
            words[g] = Some(parse_word(&presentation, line, text)?);
        }
        if let Some(k) = words.iter().position(Option::is_none) {
            return Err(ParseError {
                line: source.header,
                column: 1,
                message: format!("no image word for source generator `{}`", src.generator_names()[k]),
            });
        }
        let words = words.into_iter().map(Option::unwrap).collect();
        Some(GroupHom::new(src, presentation.clone(), words).map_err(|e| ParseError {
            line: source.header,
            column: 1,
            message: e.to_string(),
        })?)
    } else {
        None
    };

    Ok(Problem {
        presentation,
        family,
        images,
        hom,
        gram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GENUS2: &str = "\
# (A, B, B, A)
[group]
surface = 2

[target]
family = SL 2

[representation]
a1 = [[1,1],[0,1]]
b1 = [[1,0],[1,1]]
a2 = [[1,0],[1,1]]
b2 = [[1,1],[0,1]]
";

    #[test]
    fn parses_genus2() {
        let p = parse_problem(GENUS2).unwrap();
        assert_eq!(p.presentation.surface_genus(), Some(2));
        assert_eq!(p.family, GroupFamily::sl(2));
        assert!(p.representation().is_valid());
        assert!(p.hom.is_none());
    }

    #[test]
    fn unbalanced_matrix_is_positioned() {
        let text = GENUS2.replace("a1 = [[1,1],[0,1]]", "a1 = [[1,1],[0,1]");
        let e = parse_problem(&text).unwrap_err();
        assert_eq!((e.line, e.column), (9, 6 + 12));
    }

    #[test]
    fn errors() {
        let e = parse_problem("[grp]\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse_problem("[group]\ngenerators = x\nrelator = x z\n[target]\nSL 2\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 13));
        let e = parse_problem("[group]\ngenerators = x\n[target]\nSL 2\n[representation]\nx = [[1,x],[0,1]]\n")
            .unwrap_err();
        assert_eq!(e.line, 6);
        let e = parse_problem("[group]\ngenerators = x\n[target]\nSL 2\n[representation]\nx = [[1]]\n").unwrap_err();
        assert!(e.message.contains("needs 2x2"), "{e}");
        let e = parse_problem("[group]\ngenerators = x\n[target]\nSL 2\n[representation]\ny = [[1,0],[0,1]]\n")
            .unwrap_err();
        assert_eq!((e.line, e.column), (6, 1));
        let e = parse_problem("[group]\ngenerators = x y\n[target]\nSL 2\n[representation]\nx = [[1,0],[0,1]]\n")
            .unwrap_err();
        assert!(e.message.contains("`y`"));
    }

    #[test]
    fn so3_determinant_minus_one_fails_validation() {
        let text =
            "[group]\ngenerators = x\n[target]\nfamily = SO 3\n[representation]\nx = [[1,0,0],[0,1,0],[0,0,-1]]\n";
        let p = parse_problem(text).unwrap();
        assert!(!p.representation().is_valid());
    }

    #[test]
    fn hom_section() {
        let text = "\
[group]
generators = x y
[target]
SL 2
[representation]
x = [[1,1],[0,1]]
y = [[1,0],[1,1]]
[hom]
surface = 2
a1 -> x
b1 -> 1
a2 -> y
b2 -> 1
[form]
gram = [[0,1,0],[1,0,0],[0,0,2]]
";
        let p = parse_problem(text).unwrap();
        let hom = p.hom.unwrap();
        assert_eq!(hom.source().surface_genus(), Some(2));
        assert_eq!(hom.images()[1], Word::empty());
        assert_eq!(p.gram.unwrap().rows(), 3);
        let e = parse_problem(&text.replace("a2 -> y", "a2 -> w")).unwrap_err();
        assert_eq!((e.line, e.column), (12, 7));
    }
}
