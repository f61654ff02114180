//! Text formats for tables, matrices, subgroup presentations and traces.

use anyhow::{anyhow, bail, Context, Result};
use fpg_core::abelian::RelationMatrix;
use fpg_core::coset::CosetTable;
use fpg_core::schreier::SubgroupPresentation;
use fpg_core::tietze::SimplifyTrace;
use fpg_core::{Presentation, Word};
use num_bigint::BigInt;

/// Coset table: header `cosets=<n> generators=<d>`, then one line per coset
/// with 2d integers in column order `g1, g1^-1, g2, g2^-1, ...`;
/// 0 marks an undefined entry. Bit-exact across platforms.
pub fn format_coset_table(t: &CosetTable) -> String {
    let mut out = format!("cosets={} generators={}\n", t.index(), t.generator_count());
    for c in 1..=t.index() {
        let row: Vec<String> = (0..t.columns())
            .map(|col| t.entry(c, col).unwrap_or(0).to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_coset_table(text: &str) -> Result<CosetTable> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| anyhow!("empty coset table file"))?;
    let mut cosets = None;
    let mut gens = None;
    for field in header.split_whitespace() {
        if let Some(v) = field.strip_prefix("cosets=") {
            cosets = Some(v.parse::<usize>().context("bad cosets field")?);
        } else if let Some(v) = field.strip_prefix("generators=") {
            gens = Some(v.parse::<usize>().context("bad generators field")?);
        }
    }
    let (n, d) = (
        cosets.ok_or_else(|| anyhow!("missing cosets= field"))?,
        gens.ok_or_else(|| anyhow!("missing generators= field"))?,
    );
    let mut data = Vec::with_capacity(n * 2 * d);
    for line in lines {
        for tok in line.split_whitespace() {
            data.push(tok.parse::<u32>().context("bad table entry")?);
        }
    }
    CosetTable::from_raw(d, n, data).map_err(|e| anyhow!("invalid coset table: {e}"))
}

/// Matrix: first line `rows cols`, then row-major integers, arbitrary
/// precision decimal.
pub fn format_matrix(m: &RelationMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<RelationMatrix> {
    let mut it = text.split_whitespace();
    let rows: usize = it.next().ok_or_else(|| anyhow!("missing rows"))?.parse()?;
    let cols: usize = it.next().ok_or_else(|| anyhow!("missing cols"))?.parse()?;
    let data: Vec<BigInt> = it
        .map(|t| t.parse::<BigInt>().context("bad matrix entry"))
        .collect::<Result<_>>()?;
    RelationMatrix::new(rows, cols, data).ok_or_else(|| anyhow!("matrix dimensions do not match"))
}

/// Subgroup presentation: the presentation in the standard grammar, then an
/// embedding block with one line `s<k> = <word in parent generators>` per
/// Schreier generator.
pub fn format_subgroup_presentation(sp: &SubgroupPresentation, parent: &Presentation) -> String {
    let mut out = sp.presentation.format();
    out.push('\n');
    for (k, def) in sp.embedding.iter().enumerate() {
        out.push_str(&format!(
            "{} = {}\n",
            sp.presentation.generator_name(k),
            parent.format_word(def)
        ));
    }
    out
}

/// Reads the presentation from a file that may carry a trailing embedding
/// block: everything from the first `<` to the matching `>` is parsed, the
/// rest is ignored.
pub fn parse_presentation_text(text: &str) -> Result<Presentation, fpg_core::ParseError> {
    let start = text.find('<').unwrap_or(0);
    let end = text[start..]
        .find('>')
        .map(|i| start + i + 1)
        .unwrap_or(text.len());
    Presentation::parse(&text[start..end])
}

/// Parses the embedding block that follows a presentation: lines
/// `name = word`, words over the parent presentation's generators.
pub fn parse_embedding_block(text: &str, parent: &Presentation) -> Result<Vec<(String, Word)>> {
    let end = text.find('>').map(|i| i + 1).unwrap_or(0);
    let mut out = Vec::new();
    for line in text[end..].lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (name, word) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("embedding line without '=': {line}"))?;
        let w = parent
            .parse_word(word.trim())
            .map_err(|e| anyhow!("bad embedding word: {e}"))?;
        out.push((name.trim().to_string(), w));
    }
    Ok(out)
}

/// Simplify trace: lines `eliminated <name> = <word>` in elimination order,
/// words over the input presentation's generators.
pub fn format_trace(tr: &SimplifyTrace) -> String {
    let names = Presentation::new(tr.generator_names().to_vec(), Vec::new())
        .expect("trace names come from a valid presentation");
    let mut out = String::new();
    for (gen, def) in tr.eliminations() {
        out.push_str(&format!(
            "eliminated {} = {}\n",
            names.generator_name(*gen),
            names.format_word(def)
        ));
    }
    out
}

/// Round-trip guard used by tests and the session layer.
pub fn verify_coset_table_roundtrip(t: &CosetTable) -> Result<()> {
    let text = format_coset_table(t);
    let back = parse_coset_table(&text)?;
    if back.raw_data() != t.raw_data() {
        bail!("coset table round-trip mismatch");
    }
    Ok(())
}
