//! Text formats and report rendering. Matrices are a "rows cols" header and
//! one integer row per line; codes are a "p m n k" header (modulus line when
//! m > 1) followed by generator rows; construction stanzas start with "grs"
//! or "tgrs". Values may be separated by spaces or commas, blank lines and
//! #-comments are skipped, and write/read round-trips are bit-exact.

use crate::code::{CodeClass, LinearCode};
use crate::construct::{grs, tgrs, GrsSpec, TgrsSpec};
use crate::ecp::{DecodeResult, EcpReport};
use crate::error::{Error, Result};
use crate::gf::{Felt, Field};
use crate::harness::{SearchReport, TheoremCheck};
use crate::linalg::Mat;
use crate::schur::ProductReport;

fn toks(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
}

fn content_lines(s: &str) -> Vec<&str> {
    s.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_int(tok: &str, what: &str) -> Result<u64> {
    tok.parse::<u64>()
        .map_err(|_| Error::Parse(format!("{what}: expected an integer, got {tok:?}")))
}

fn parse_row(f: &Field, line: &str, expect: usize, what: &str) -> Result<Vec<Felt>> {
    let vals: Vec<Felt> = toks(line)
        .map(|t| f.felt(parse_int(t, what)?))
        .collect::<Result<_>>()?;
    if vals.len() != expect {
        return Err(Error::Parse(format!(
            "{what}: expected {expect} values, got {}",
            vals.len()
        )));
    }
    Ok(vals)
}

/// Canonical integers from free text (spaces or commas), e.g. a CLI α list.
pub fn parse_felts(f: &Field, text: &str) -> Result<Vec<Felt>> {
    toks(text)
        .map(|t| f.felt(parse_int(t, "value list")?))
        .collect()
}

fn join_ints<I: IntoIterator<Item = u64>>(vals: I, sep: &str) -> String {
    vals.into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn write_matrix(m: &Mat) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        out.push_str(&join_ints(m.row(i).iter().map(|x| x.0), " "));
        out.push('\n');
    }
    out
}

pub fn read_matrix(f: &Field, s: &str) -> Result<Mat> {
    let lines = content_lines(s);
    let Some((header, rest)) = lines.split_first() else {
        return Err(Error::Parse("empty matrix input".into()));
    };
    let dims: Vec<u64> = toks(header)
        .map(|t| parse_int(t, "matrix header"))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse(format!(
            "matrix header: expected \"rows cols\", got {header:?}"
        )));
    };
    if rest.len() != rows as usize {
        return Err(Error::Parse(format!(
            "matrix body: expected {rows} rows, got {}",
            rest.len()
        )));
    }
    let body: Vec<Vec<Felt>> = rest
        .iter()
        .map(|l| parse_row(f, l, cols as usize, "matrix row"))
        .collect::<Result<_>>()?;
    if rows == 0 {
        return Err(Error::Parse("matrix with zero rows".into()));
    }
    Mat::from_rows(f.clone(), body)
}

/// A parsed code input: either a plain generator file or a construction
/// stanza, which keeps its evaluation points available to the caller.
#[derive(Debug, Clone)]
pub enum CodeInput {
    Plain(LinearCode),
    Grs(GrsSpec),
    Tgrs(TgrsSpec),
}

impl CodeInput {
    pub fn code(&self) -> Result<LinearCode> {
        match self {
            CodeInput::Plain(c) => Ok(c.clone()),
            CodeInput::Grs(spec) => Ok(grs(spec)),
            CodeInput::Tgrs(spec) => tgrs(spec),
        }
    }

    /// Evaluation points when the input was a stanza.
    pub fn alpha(&self) -> Option<&[Felt]> {
        match self {
            CodeInput::Plain(_) => None,
            CodeInput::Grs(spec) => Some(spec.alpha()),
            CodeInput::Tgrs(spec) => Some(spec.base().alpha()),
        }
    }

    pub fn field(&self) -> &Field {
        match self {
            CodeInput::Plain(c) => c.field(),
            CodeInput::Grs(spec) => spec.field(),
            CodeInput::Tgrs(spec) => spec.base().field(),
        }
    }
}

/// Reads any accepted code format, dispatching on the first token.
pub fn read_code_input(s: &str) -> Result<CodeInput> {
    let lines = content_lines(s);
    let Some(first) = lines.first() else {
        return Err(Error::Parse("empty code input".into()));
    };
    match toks(first).next() {
        Some("grs") => read_stanza(&lines, false),
        Some("tgrs") => read_stanza(&lines, true),
        _ => read_plain_code(&lines).map(CodeInput::Plain),
    }
}

pub fn read_code(s: &str) -> Result<LinearCode> {
    read_code_input(s)?.code()
}

fn read_plain_code(lines: &[&str]) -> Result<LinearCode> {
    let header: Vec<u64> = toks(lines[0])
        .map(|t| parse_int(t, "code header"))
        .collect::<Result<_>>()?;
    let [p, m, n, k] = header[..] else {
        return Err(Error::Parse(format!(
            "code header: expected \"p m n k\", got {:?}",
            lines[0]
        )));
    };
    let mut body = 1usize;
    let modulus: Option<Vec<u64>> = if m > 1 {
        let Some(line) = lines.get(1) else {
            return Err(Error::Parse("missing modulus line for an extension field".into()));
        };
        body = 2;
        Some(toks(line).map(|t| parse_int(t, "modulus")).collect::<Result<_>>()?)
    } else {
        None
    };
    let f = Field::new(p, m as u32, modulus.as_deref())?;
    let rest = &lines[body..];
    if rest.len() != k as usize {
        return Err(Error::Parse(format!(
            "code body: expected {k} generator rows, got {}",
            rest.len()
        )));
    }
    let rows: Vec<Vec<Felt>> = rest
        .iter()
        .map(|l| parse_row(&f, l, n as usize, "generator row"))
        .collect::<Result<_>>()?;
    LinearCode::from_generator(&Mat::from_rows(f, rows)?)
}

fn read_stanza(lines: &[&str], twisted: bool) -> Result<CodeInput> {
    let mut head = toks(lines[0]);
    head.next(); // the kind keyword, already dispatched
    let header: Vec<u64> = head.map(|t| parse_int(t, "stanza header")).collect::<Result<_>>()?;
    let [p, m, n, k] = header[..] else {
        return Err(Error::Parse(format!(
            "stanza header: expected \"{} p m n k\", got {:?}",
            if twisted { "tgrs" } else { "grs" },
            lines[0]
        )));
    };
    let mut fields: std::collections::BTreeMap<&str, &str> = std::collections::BTreeMap::new();
    for line in &lines[1..] {
        let Some(key) = toks(line).next() else { continue };
        let value = line[line.find(key).expect("key comes from line") + key.len()..].trim();
        match key {
            "modulus" | "alpha" | "v" | "eta" | "t" | "h" => {
                if fields.insert(key, value).is_some() {
                    return Err(Error::Parse(format!("duplicate stanza line {key:?}")));
                }
            }
            other => return Err(Error::Parse(format!("unknown stanza line {other:?}"))),
        }
    }
    let modulus: Option<Vec<u64>> = match fields.get("modulus") {
        Some(line) => Some(toks(line).map(|t| parse_int(t, "modulus")).collect::<Result<_>>()?),
        None => None,
    };
    let f = Field::new(p, m as u32, modulus.as_deref())?;
    let Some(alpha_line) = fields.get("alpha") else {
        return Err(Error::Parse("stanza is missing its alpha line".into()));
    };
    let alpha = parse_row(&f, alpha_line, n as usize, "alpha")?;
    let v = match fields.get("v") {
        Some(line) => parse_row(&f, line, n as usize, "v")?,
        None => vec![f.one(); n as usize],
    };
    let base = GrsSpec::new(f.clone(), alpha, v, k as usize)?;
    if !twisted {
        for key in ["eta", "t", "h"] {
            if fields.contains_key(key) {
                return Err(Error::Parse(format!("{key:?} only belongs in a tgrs stanza")));
            }
        }
        return Ok(CodeInput::Grs(base));
    }
    let Some(eta_line) = fields.get("eta") else {
        return Err(Error::Parse("tgrs stanza is missing its eta line".into()));
    };
    let eta = f.felt(parse_int(toks(eta_line).next().unwrap_or(""), "eta")?)?;
    let spec = match (fields.get("t"), fields.get("h")) {
        (None, None) => TgrsSpec::plus(base, eta)?,
        (t, h) => {
            let t = match t {
                Some(line) => parse_int(toks(line).next().unwrap_or(""), "t")? as usize,
                None => 1,
            };
            let h = match h {
                Some(line) => parse_int(toks(line).next().unwrap_or(""), "h")? as usize,
                None => k as usize - 1,
            };
            TgrsSpec::new(base, eta, t, h)?
        }
    };
    Ok(CodeInput::Tgrs(spec))
}

pub fn write_code(c: &LinearCode) -> String {
    let f = c.field();
    let mut out = format!("{} {} {} {}\n", f.p(), f.m(), c.n(), c.k());
    if f.m() > 1 {
        out.push_str(&join_ints(f.modulus().iter().copied(), " "));
        out.push('\n');
    }
    for i in 0..c.k() {
        out.push_str(&join_ints(c.generator().row(i).iter().map(|x| x.0), " "));
        out.push('\n');
    }
    out
}

/// One key=value line for scripting. Values must not contain spaces.
pub fn record(pairs: &[(&str, String)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn field_text(f: &Field) -> String {
    if f.m() == 1 {
        format!("GF({}) order {}", f.p(), f.q())
    } else {
        format!(
            "GF({}^{}) order {} modulus {}",
            f.p(),
            f.m(),
            f.q(),
            join_ints(f.modulus().iter().copied(), " ")
        )
    }
}

pub fn field_record(f: &Field) -> String {
    record(&[
        ("p", f.p().to_string()),
        ("m", f.m().to_string()),
        ("q", f.q().to_string()),
        ("modulus", join_ints(f.modulus().iter().copied(), ",")),
    ])
}

pub fn class_text(cl: &CodeClass, n: usize, k: usize) -> String {
    format!("{} [{},{},{}]", cl.tag, n, k, cl.d)
}

pub fn class_record(cl: &CodeClass, n: usize, k: usize) -> String {
    record(&[
        ("class", cl.tag.to_string()),
        ("n", n.to_string()),
        ("k", k.to_string()),
        ("d", cl.d.to_string()),
        ("d_dual", cl.d_dual.to_string()),
    ])
}

pub fn product_text(r: &ProductReport) -> String {
    let fullsupp = match r.fullsupp_bound_ok {
        Some(ok) => ok.to_string(),
        None => "n/a".into(),
    };
    format!(
        "A∗B on n={}: k(A)={} k(B)={} k(A∗B)={} d(A∗B)={}\n\
         product Singleton bound: {} (attained with d ≥ 2: {})\n\
         full-support dimension bound holds: {fullsupp}",
        r.n, r.k_a, r.k_b, r.k_prod, r.d_prod, r.psb, r.is_pmds
    )
}

pub fn product_record(r: &ProductReport) -> String {
    record(&[
        ("n", r.n.to_string()),
        ("k_a", r.k_a.to_string()),
        ("k_b", r.k_b.to_string()),
        ("k_prod", r.k_prod.to_string()),
        ("d_prod", r.d_prod.to_string()),
        ("psb", r.psb.to_string()),
        ("pmds", r.is_pmds.to_string()),
        (
            "fullsupp_bound",
            match r.fullsupp_bound_ok {
                Some(ok) => ok.to_string(),
                None => "n/a".into(),
            },
        ),
    ])
}

pub fn ecp_report_text(r: &EcpReport) -> String {
    let case = match r.case {
        Some(c) => c.to_string(),
        None => "none".into(),
    };
    format!(
        "ℓ={} n={}\n\
         E1 A∗B ⊆ C⊥: {}\n\
         E2 d(B⊥)={} > ℓ: {}\n\
         E3 k(A)={} > ℓ: {}\n\
         E4 d(A)+d(C)={} > n: {}\n\
         pair verifies: {}\n\
         A={} B={} B⊥={} A∗B={}\n\
         case: {case}",
        r.ell,
        r.n,
        r.e1(),
        r.e2_dual_b_distance,
        r.e2(),
        r.e3_a_dimension,
        r.e3(),
        r.e4_distance_sum,
        r.e4(),
        r.is_ecp(),
        r.params_a,
        r.params_b,
        r.params_b_dual,
        r.params_prod,
    )
}

pub fn ecp_report_record(r: &EcpReport) -> String {
    let case = match r.case {
        Some(c) => c.to_string(),
        None => "none".into(),
    };
    record(&[
        ("ell", r.ell.to_string()),
        ("n", r.n.to_string()),
        ("e1", r.e1().to_string()),
        ("e2_dual_b_distance", r.e2_dual_b_distance.to_string()),
        ("e3_a_dimension", r.e3_a_dimension.to_string()),
        ("e4_distance_sum", r.e4_distance_sum.to_string()),
        ("is_ecp", r.is_ecp().to_string()),
        ("a", r.params_a.to_string()),
        ("b", r.params_b.to_string()),
        ("b_dual", r.params_b_dual.to_string()),
        ("prod", r.params_prod.to_string()),
        ("case", case),
    ])
}

fn word_csv(w: &Option<Vec<Felt>>) -> String {
    match w {
        Some(v) => join_ints(v.iter().map(|x| x.0), ","),
        None => "-".into(),
    }
}

pub fn decode_text(r: &DecodeResult) -> String {
    let mut out = format!("status: {}", r.status);
    if let Some(c) = &r.codeword {
        out.push_str(&format!(
            "\ncodeword: {}",
            join_ints(c.iter().map(|x| x.0), " ")
        ));
    }
    if let Some(e) = &r.error {
        out.push_str(&format!("\nerror: {}", join_ints(e.iter().map(|x| x.0), " ")));
    }
    if let Some(z) = &r.locator_zeroset {
        out.push_str(&format!(
            "\nlocator zero set: {}",
            join_ints(z.iter().map(|&i| i as u64), " ")
        ));
    }
    out
}

pub fn decode_record(r: &DecodeResult) -> String {
    let zeros = match &r.locator_zeroset {
        Some(z) => join_ints(z.iter().map(|&i| i as u64), ","),
        None => "-".into(),
    };
    record(&[
        ("status", r.status.to_string()),
        ("codeword", word_csv(&r.codeword)),
        ("error", word_csv(&r.error)),
        ("locator_zeros", zeros),
    ])
}

pub fn checks_text(checks: &[TheoremCheck]) -> String {
    checks
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn checks_record(checks: &[TheoremCheck]) -> String {
    checks
        .iter()
        .map(|c| {
            record(&[
                ("id", c.id.to_string()),
                ("applicable", c.applicable.to_string()),
                ("verdict", c.verdict.to_string()),
                (
                    "possibility",
                    match c.detail.matched_possibility {
                        Some(p) => p.to_string(),
                        None => "-".into(),
                    },
                ),
                (
                    "b_dual",
                    c.detail.params_b_dual.map_or("-".into(), |p| p.to_string()),
                ),
                (
                    "prod",
                    c.detail.params_prod.map_or("-".into(), |p| p.to_string()),
                ),
            ])
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn search_record(r: &SearchReport) -> String {
    record(&[
        ("instances", r.instances_examined.to_string()),
        ("witnesses", r.witnesses_found.to_string()),
        ("elapsed_s", format!("{:.3}", r.elapsed.as_secs_f64())),
        ("seed", r.seed.to_string()),
    ])
}
