//! Line-oriented instance definition files.
//!
//! Each non-blank line is `keyword rest`; `#` starts a comment. The first
//! directive names the file: `hopf NAME`, `bundle NAME` or `smash NAME`.
//! The full grammar is documented in the repository README.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Hopf,
    Bundle,
    Smash,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub no: usize,
    pub keyword: String,
    pub rest: String,
    /// Inside a `begin prolongation` ... `end prolongation` block.
    pub prolonged: bool,
}

impl Line {
    pub fn err(&self, msg: impl Into<String>) -> Error {
        Error::InstanceFile { line: self.no, msg: msg.into() }
    }

    /// Splits `lhs = rhs` at the first `=` that is not part of `=>`.
    pub fn equation(&self) -> Result<(&str, &str)> {
        let b = self.rest.as_bytes();
        for i in 0..b.len() {
            if b[i] == b'=' && b.get(i + 1) != Some(&b'>') {
                return Ok((self.rest[..i].trim(), self.rest[i + 1..].trim()));
            }
        }
        Err(self.err("expected `lhs = rhs`"))
    }

    pub fn int(&self) -> Result<i64> {
        self.rest.trim().parse().map_err(|_| self.err(format!("expected an integer, got `{}`", self.rest)))
    }
}

/// `name(p, ...) [flag ...] : lhs => rhs ; lhs => rhs`, used for connections and gauges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub name: String,
    pub params: Vec<String>,
    /// Words after the name, such as `flat` on a connection.
    pub flags: Vec<String>,
    pub rules: Vec<(String, String)>,
    pub line: usize,
}

impl Template {
    pub fn parse(line: &Line) -> Result<Self> {
        let (head, body) = line.rest.split_once(':').ok_or_else(|| line.err("expected `name : rules`"))?;
        let head = head.trim();
        let (name, params, rest) = match head.split_once('(') {
            None => {
                let (n, rest) = head.split_once(char::is_whitespace).unwrap_or((head, ""));
                (n.to_string(), Vec::new(), rest)
            }
            Some((n, p)) => {
                let (p, rest) = p.split_once(')').ok_or_else(|| line.err("unclosed parameter list"))?;
                let params = p.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                (n.trim().to_string(), params, rest)
            }
        };
        let flags: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        if let Some(bad) = flags.iter().find(|f| !is_ident(f)) {
            return Err(line.err(format!("bad flag `{bad}`")));
        }
        if !is_ident(&name) {
            return Err(line.err(format!("bad name `{name}`")));
        }
        let mut rules = Vec::new();
        for part in body.split(';') {
            let (l, r) = part.split_once("=>").ok_or_else(|| line.err("expected `lhs => rhs`"))?;
            rules.push((l.trim().to_string(), r.trim().to_string()));
        }
        Ok(Template { name, params, flags, rules, line: line.no })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub kind: Kind,
    pub name: String,
    pub lines: Vec<Line>,
}

const KEYWORDS: &[&str] = &[
    "param", "structure", "total", "gen", "form", "cap", "rel", "d", "coproduct", "counit", "antipode",
    "lambda", "coact", "cleave", "translation", "witness", "let", "window", "window-forms", "connection",
    "gauge", "act", "begin", "end",
];

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(Kind, String)> = None;
        let mut lines = Vec::new();
        let mut in_block = false;
        for (i, raw) in text.lines().enumerate() {
            let no = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (kw, rest) = match content.split_once(char::is_whitespace) {
                Some((k, r)) => (k, r.trim()),
                None => (content, ""),
            };
            let err = |msg: String| Error::InstanceFile { line: no, msg };
            if header.is_none() {
                let kind = match kw {
                    "hopf" => Kind::Hopf,
                    "bundle" => Kind::Bundle,
                    "smash" => Kind::Smash,
                    _ => return Err(err(format!("expected `hopf`, `bundle` or `smash`, got `{kw}`"))),
                };
                if !is_ident(rest) {
                    return Err(err(format!("bad instance name `{rest}`")));
                }
                header = Some((kind, rest.to_string()));
                continue;
            }
            if !KEYWORDS.contains(&kw) {
                return Err(err(format!("unknown directive `{kw}`")));
            }
            match (kw, rest) {
                ("begin", "prolongation") if !in_block => {
                    in_block = true;
                    continue;
                }
                ("end", "prolongation") if in_block => {
                    in_block = false;
                    continue;
                }
                ("begin", _) | ("end", _) => return Err(err(format!("unbalanced `{kw} {rest}`"))),
                _ => {}
            }
            lines.push(Line { no, keyword: kw.to_string(), rest: rest.to_string(), prolonged: in_block });
        }
        if in_block {
            return Err(Error::InstanceFile { line: text.lines().count(), msg: "unterminated prolongation block".into() });
        }
        let (kind, name) = header.ok_or_else(|| Error::InstanceFile { line: 1, msg: "empty instance file".into() })?;
        Ok(InstanceFile { kind, name, lines })
    }

    pub fn all<'a>(&'a self, keyword: &'a str) -> impl Iterator<Item = &'a Line> + 'a {
        self.lines.iter().filter(move |l| l.keyword == keyword)
    }

    pub fn one<'a>(&'a self, keyword: &'a str) -> Result<Option<&'a Line>> {
        let mut it = self.all(keyword);
        let first = it.next();
        if let Some(second) = it.next() {
            return Err(second.err(format!("`{keyword}` given twice")));
        }
        Ok(first)
    }

    /// The file without its frozen prolongation block.
    pub fn first_order(&self) -> InstanceFile {
        InstanceFile {
            kind: self.kind,
            name: self.name.clone(),
            lines: self.lines.iter().filter(|l| !l.prolonged).cloned().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_directives_and_blocks() {
        let f = InstanceFile::parse(
            "# demo\nbundle demo\nparam q\ngen u invertible weight 1\nbegin prolongation\nrel du*du = 0\nend prolongation\n",
        )
        .unwrap();
        assert_eq!(f.kind, Kind::Bundle);
        assert_eq!(f.lines.len(), 3);
        assert!(f.lines[2].prolonged);
        assert_eq!(f.first_order().lines.len(), 2);
        assert_eq!(f.lines[2].equation().unwrap(), ("du*du", "0"));
    }

    #[test]
    fn reports_line_numbers() {
        match InstanceFile::parse("hopf h\n\nfrobnicate x\n") {
            Err(Error::InstanceFile { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(InstanceFile::parse("gen u\n").is_err());
        assert!(InstanceFile::parse("hopf h\nbegin prolongation\n").is_err());
    }

    #[test]
    fn templates() {
        let f = InstanceFile::parse("bundle b\ngauge f(n) : t => u^(-n) ; t^-1 => u^n\n").unwrap();
        let t = Template::parse(&f.lines[0]).unwrap();
        assert_eq!(t.name, "f");
        assert_eq!(t.params, vec!["n".to_string()]);
        assert_eq!(t.rules[1], ("t^-1".to_string(), "u^n".to_string()));
    }
}
