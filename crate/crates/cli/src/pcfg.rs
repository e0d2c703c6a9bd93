//! Parsing and emission of the pcfg and sepcert text formats.
//!
//! pcfg grammar (after comment and blank-line removal):
//!
//! ```text
//! pcfg 1
//! field <p> <e> [<m0> <m1> ... <me>]   # modulus required iff e > 1
//! ambient <N>
//! points <d>
//! <d lines of N+1 base-p encodings>
//! ```
//!
//! sepcert grammar:
//!
//! ```text
//! sepcert 1
//! point <P>
//! degree <L>
//! hyp <c0> ... <cN>                    # zero or more
//! form <t> <coefficients...>           # optional, at most one
//! ```
//!
//! `emit_pcfg` writes the canonical form: normalized coordinates, modulus
//! spelled out for extension fields. Parsing an emitted file reproduces
//! the configuration exactly; emitting a parsed file canonicalizes it.

use std::fmt;

use pointreg::castelnuovo::{GeneralForm, Method, SeparatorCertificate};
use pointreg::geometry::{make_config, Hyperplane};
use pointreg::{FieldElement, FieldSpec, PointConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PcfgError {
    /// Malformed text: wrong keyword, bad integer, wrong token count.
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    /// Well-formed text describing an invalid object (bad field, degenerate
    /// or duplicated points).
    Semantic(String),
}

impl fmt::Display for PcfgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PcfgError::Syntax { line, col, msg } => {
                write!(f, "line {}, column {}: {}", line, col, msg)
            }
            PcfgError::Semantic(msg) => write!(f, "{}", msg),
        }
    }
}

impl std::error::Error for PcfgError {}

fn syntax(line: usize, col: usize, msg: &str) -> PcfgError {
    PcfgError::Syntax {
        line,
        col,
        msg: msg.to_string(),
    }
}

/// One significant line: its 1-based number and (1-based column, token)
/// pairs, comments stripped.
type Line<'a> = (usize, Vec<(usize, &'a str)>);

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in line.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s + 1, &line[s..pos]));
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if let Some(s) = start {
            tokens.push((s + 1, &line[s..]));
        }
        if !tokens.is_empty() {
            out.push((i + 1, tokens));
        }
    }
    out
}

struct Reader<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Reader<'a> {
        Reader {
            lines: significant_lines(text),
            pos: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<&Line<'a>, PcfgError> {
        let line = self.lines.get(self.pos).ok_or_else(|| {
            let after = self.lines.last().map_or(0, |l| l.0);
            syntax(after + 1, 1, &format!("missing {} line", what))
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn peek_keyword(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|(_, toks)| toks[0].1)
    }

    fn expect_end(&self) -> Result<(), PcfgError> {
        match self.lines.get(self.pos) {
            None => Ok(()),
            Some((line, toks)) => Err(syntax(*line, toks[0].0, "unexpected line")),
        }
    }
}

fn parse_num(line: usize, tok: (usize, &str), what: &str) -> Result<u64, PcfgError> {
    tok.1
        .parse::<u64>()
        .map_err(|_| syntax(line, tok.0, &format!("expected {} as an integer", what)))
}

/// The line must start with `keyword` and carry exactly `arity` further
/// tokens, which are returned parsed.
fn keyword_line(line: &Line<'_>, keyword: &str, arity: usize) -> Result<Vec<u64>, PcfgError> {
    let (no, toks) = line;
    if toks[0].1 != keyword {
        return Err(syntax(
            *no,
            toks[0].0,
            &format!("expected `{}`, found `{}`", keyword, toks[0].1),
        ));
    }
    if toks.len() != arity + 1 {
        let col = toks.get(arity + 1).map_or(toks[0].0, |t| t.0);
        return Err(syntax(
            *no,
            col,
            &format!("`{}` takes {} arguments", keyword, arity),
        ));
    }
    toks[1..]
        .iter()
        .map(|&t| parse_num(*no, t, keyword))
        .collect()
}

fn header(reader: &mut Reader<'_>, magic: &str) -> Result<(), PcfgError> {
    let line = reader.next("header")?;
    let version = keyword_line(line, magic, 1)?;
    if version[0] != 1 {
        return Err(syntax(line.0, line.1[1].0, "unsupported version"));
    }
    Ok(())
}

fn field_line(reader: &mut Reader<'_>) -> Result<FieldSpec, PcfgError> {
    let (no, toks) = reader.next("field")?;
    let (no, toks) = (*no, toks.clone());
    if toks[0].1 != "field" {
        return Err(syntax(no, toks[0].0, "expected `field`"));
    }
    if toks.len() < 3 {
        return Err(syntax(no, toks[0].0, "`field` takes p and e"));
    }
    let p = parse_num(no, toks[1], "p")?;
    let e_raw = parse_num(no, toks[2], "e")?;
    let e = u32::try_from(e_raw).map_err(|_| syntax(no, toks[2].0, "e out of range"))?;
    if e <= 1 {
        if toks.len() > 3 {
            return Err(syntax(no, toks[3].0, "prime field takes no modulus"));
        }
        return FieldSpec::new(p, e).map_err(|err| PcfgError::Semantic(err.to_string()));
    }
    let want = 3 + e as usize + 1;
    if toks.len() != want {
        let col = toks.get(3).map_or(toks[0].0, |t| t.0);
        return Err(syntax(
            no,
            col,
            &format!("extension field needs {} modulus coefficients", e + 1),
        ));
    }
    let coeffs: Vec<u64> = toks[3..]
        .iter()
        .map(|&t| parse_num(no, t, "modulus coefficient"))
        .collect::<Result<_, _>>()?;
    if let Some(i) = coeffs.iter().position(|&c| c >= p) {
        return Err(syntax(
            no,
            toks[3 + i].0,
            "modulus coefficient not reduced mod p",
        ));
    }
    FieldSpec::with_modulus(p, e, &coeffs).map_err(|err| PcfgError::Semantic(err.to_string()))
}

fn coded_element(
    field: &FieldSpec,
    line: usize,
    tok: (usize, &str),
) -> Result<FieldElement, PcfgError> {
    let value = parse_num(line, tok, "field element")?;
    if value >= field.order() {
        return Err(syntax(line, tok.0, "encoding exceeds the field order"));
    }
    Ok(field.elem(value))
}

pub fn parse_pcfg(text: &str) -> Result<PointConfig, PcfgError> {
    let mut reader = Reader::new(text);
    header(&mut reader, "pcfg")?;
    let field = field_line(&mut reader)?;
    let ambient = keyword_line(reader.next("ambient")?, "ambient", 1)?[0] as usize;
    let count = keyword_line(reader.next("points")?, "points", 1)?[0] as usize;
    let mut rows = Vec::with_capacity(count);
    for _ in 0..count {
        let (no, toks) = reader.next("point")?;
        let (no, toks) = (*no, toks.clone());
        if toks.len() != ambient + 1 {
            return Err(syntax(
                no,
                toks[0].0,
                &format!("point needs {} coordinates", ambient + 1),
            ));
        }
        let row: Vec<FieldElement> = toks
            .iter()
            .map(|&t| coded_element(&field, no, t))
            .collect::<Result<_, _>>()?;
        rows.push(row);
    }
    reader.expect_end()?;
    make_config(&field, ambient, &rows).map_err(|err| PcfgError::Semantic(err.to_string()))
}

pub fn emit_pcfg(config: &PointConfig) -> String {
    let field = config.field();
    let mut out = String::from("pcfg 1\n");
    out.push_str(&format!("field {} {}", field.p(), field.e()));
    if field.e() > 1 {
        for &m in field.modulus() {
            out.push_str(&format!(" {}", m));
        }
    }
    out.push('\n');
    out.push_str(&format!("ambient {}\n", config.ambient_dim()));
    out.push_str(&format!("points {}\n", config.len()));
    for point in config.points() {
        let row: Vec<String> = point.coords().iter().map(|c| c.0.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Certificates read back from disk carry the external method tag; length
/// and coverage checking is the verifier's job, not the parser's.
pub fn parse_sepcert(field: &FieldSpec, text: &str) -> Result<SeparatorCertificate, PcfgError> {
    let mut reader = Reader::new(text);
    header(&mut reader, "sepcert")?;
    let point = keyword_line(reader.next("point")?, "point", 1)?[0] as usize;
    let degree = keyword_line(reader.next("degree")?, "degree", 1)?[0] as usize;
    let mut hyperplanes = Vec::new();
    while reader.peek_keyword() == Some("hyp") {
        let (no, toks) = reader.next("hyp")?;
        let (no, toks) = (*no, toks.clone());
        if toks.len() < 2 {
            return Err(syntax(no, toks[0].0, "`hyp` needs coefficients"));
        }
        let coeffs: Vec<FieldElement> = toks[1..]
            .iter()
            .map(|&t| coded_element(field, no, t))
            .collect::<Result<_, _>>()?;
        let hyp = Hyperplane::new(field, &coeffs)
            .map_err(|err| PcfgError::Semantic(format!("hyp line {}: {}", no, err)))?;
        hyperplanes.push(hyp);
    }
    let general_form = if reader.peek_keyword() == Some("form") {
        let (no, toks) = reader.next("form")?;
        let (no, toks) = (*no, toks.clone());
        if toks.len() < 2 {
            return Err(syntax(no, toks[0].0, "`form` needs a degree"));
        }
        let t = parse_num(no, toks[1], "form degree")? as usize;
        let coeffs: Vec<FieldElement> = toks[2..]
            .iter()
            .map(|&tok| coded_element(field, no, tok))
            .collect::<Result<_, _>>()?;
        Some(GeneralForm { degree: t, coeffs })
    } else {
        None
    };
    reader.expect_end()?;
    Ok(SeparatorCertificate {
        point_index: point,
        degree,
        hyperplanes,
        general_form,
        method: Method::External,
    })
}

pub fn emit_sepcert(cert: &SeparatorCertificate) -> String {
    let mut out = String::from("sepcert 1\n");
    out.push_str(&format!("# method {}\n", cert.method));
    out.push_str(&format!("point {}\n", cert.point_index));
    out.push_str(&format!("degree {}\n", cert.degree));
    for hyp in &cert.hyperplanes {
        out.push_str("hyp");
        for c in &hyp.coeffs {
            out.push_str(&format!(" {}", c.0));
        }
        out.push('\n');
    }
    if let Some(form) = &cert.general_form {
        out.push_str(&format!("form {}", form.degree));
        for c in &form.coeffs {
            out.push_str(&format!(" {}", c.0));
        }
        out.push('\n');
    }
    out
}
