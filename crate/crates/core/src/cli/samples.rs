//! Sample sets as CSV: a header `x1,…,xn,f` followed by one row per sample,
//! every cell an integer or `p/q`.

use crate::approx::SampleSet;
use crate::syntax::rational::parse_rational;
use crate::syntax::Rational;

pub fn parse_samples(text: &str) -> Result<SampleSet, String> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| e.to_string())?.clone();
    let n = header.len().checked_sub(1).filter(|&n| n > 0).ok_or("header needs x1,…,xn,f")?;
    for (j, name) in header.iter().enumerate() {
        let want = if j == n { "f".to_string() } else { format!("x{}", j + 1) };
        if name != want {
            return Err(format!("header column {} is `{name}`, expected `{want}`", j + 1));
        }
    }
    let mut samples = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| e.to_string())?;
        let line = record.position().map_or(0, |p| p.line());
        let cells = record
            .iter()
            .map(|c| parse_rational(c).ok_or_else(|| format!("line {line}: bad rational `{c}`")))
            .collect::<Result<Vec<Rational>, _>>()?;
        let (f, point) = cells.split_last().ok_or_else(|| format!("line {line}: empty row"))?;
        samples.push((point.to_vec(), f.clone()));
    }
    SampleSet::new(n, samples).map_err(|e| e.to_string())
}

pub fn write_samples(s: &SampleSet) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=s.dim()).map(|j| format!("x{j}")).collect();
    header.push("f".into());
    w.write_record(&header).expect("in-memory write");
    for (p, f) in s.points().iter().zip(s.values()) {
        let row: Vec<String> = p.iter().chain(std::iter::once(f)).map(ToString::to_string).collect();
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}
