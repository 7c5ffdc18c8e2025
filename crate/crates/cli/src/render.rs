use std::fmt::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;
use weyr::compose::ComposeReport;
use weyr::matrix::MatrixJson;
use weyr::mci::{GeneralElementReport, LefschetzReport};
use weyr::sweep::SweepSummary;
use weyr::{ExactMatrix, Partition, Scalar, WeyrStructureReport};

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// A result in all three output formats.
pub struct Output {
    json: Value,
    csv: String,
    pretty: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn row<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// One value, or an array when the result covers several eigenvalues.
fn one_or_many<T: Serialize>(items: &[T], single: bool) -> Value {
    if single && items.len() == 1 {
        to_value(&items[0])
    } else {
        to_value(&items)
    }
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", self.json),
            Format::Csv => self.csv.clone(),
            Format::Pretty => self.pretty.clone(),
        }
    }

    pub fn matrix(m: &ExactMatrix) -> Self {
        let j = MatrixJson::from(m);
        let width = j.entries.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut pretty = String::new();
        for r in &j.entries {
            let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(pretty, "{}", cells.join(" ")).unwrap();
        }
        Output { json: to_value(&j), csv: m.to_csv(), pretty }
    }

    pub fn partition(p: &Partition) -> Self {
        Self::list(p.parts())
    }

    pub fn list(v: &[usize]) -> Self {
        let csv = v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        Output { json: to_value(&v), csv: format!("{csv}\n"), pretty: format!("{}\n", row(v)) }
    }

    pub fn weyr(reports: &[WeyrStructureReport], single: bool) -> Self {
        let mut csv = String::from("eigenvalue,structure,rank_ladder\n");
        let mut pretty = String::new();
        for r in reports {
            writeln!(csv, "{},{},{}", r.eigenvalue, r.structure.to_row(), row(&r.rank_ladder)).unwrap();
            writeln!(pretty, "eigenvalue {}: {}   (ranks {})", r.eigenvalue, r.structure.to_row(), row(&r.rank_ladder))
                .unwrap();
        }
        Output { json: one_or_many(reports, single), csv, pretty }
    }

    pub fn jordan(items: &[(Scalar, Partition)], single: bool) -> Self {
        #[derive(Serialize)]
        struct J<'a> {
            eigenvalue: String,
            structure: &'a Partition,
        }
        let rows: Vec<J> = items.iter().map(|(l, p)| J { eigenvalue: l.to_string(), structure: p }).collect();
        let mut csv = String::from("eigenvalue,structure\n");
        let mut pretty = String::new();
        for (l, p) in items {
            writeln!(csv, "{l},{}", p.to_row()).unwrap();
            writeln!(pretty, "eigenvalue {l}: {}", p.to_row()).unwrap();
        }
        Output { json: one_or_many(&rows, single), csv, pretty }
    }

    pub fn compose(reports: &[ComposeReport], single: bool) -> Self {
        let mut csv = String::from("t,eigenvalue,input_structure,predicted,computed,agree\n");
        let mut pretty = String::new();
        for r in reports {
            writeln!(
                csv,
                "{},{},{},{},{},{}",
                r.t,
                r.eigenvalue,
                r.input_structure.to_row(),
                r.predicted.to_row(),
                r.computed.to_row(),
                r.agree
            )
            .unwrap();
            writeln!(
                pretty,
                "t = {}, eigenvalue {}: m = {}\n  predicted {}\n  computed  {}\n  {}",
                r.t,
                r.eigenvalue,
                r.input_structure.to_row(),
                r.predicted.to_row(),
                r.computed.to_row(),
                if r.agree { "agree" } else { "DISAGREE" }
            )
            .unwrap();
        }
        Output { json: one_or_many(reports, single), csv, pretty }
    }

    pub fn lefschetz(r: &LefschetzReport) -> Self {
        let mut csv = String::from("k,i,expected_rank,actual_rank\n");
        let kind = format!("{:?}", r.kind).to_lowercase();
        let mut pretty = format!("{kind} Lefschetz: {}\n", if r.holds { "holds" } else { "fails" });
        for f in &r.witness_failures {
            writeln!(csv, "{},{},{},{}", f.k, f.i, f.expected_rank, f.actual_rank).unwrap();
            writeln!(pretty, "  k = {}, i = {}: rank {} (expected {})", f.k, f.i, f.actual_rank, f.expected_rank).unwrap();
        }
        Output { json: to_value(r), csv, pretty }
    }

    pub fn general(r: &GeneralElementReport) -> Self {
        let csv = format!(
            "weyr,hilbert_sorted,shifted_weyr,equal\n{},{},{},{}\n",
            r.weyr.to_row(),
            r.hilbert_sorted.to_row(),
            r.shifted_weyr.to_row(),
            r.equal
        );
        let pretty = format!(
            "weyr           {}\nhilbert sorted {}\nshifted weyr   {}\nequal          {}\n",
            r.weyr.to_row(),
            r.hilbert_sorted.to_row(),
            r.shifted_weyr.to_row(),
            r.equal
        );
        Output { json: to_value(r), csv, pretty }
    }

    pub fn sweep(s: &SweepSummary) -> Self {
        let mut csv = String::from("index,m,t,eigenvalue,guarded,verdict,predicted,computed\n");
        let mut pretty = String::new();
        for c in &s.cases {
            let verdict = to_value(&c.verdict);
            let verdict = verdict.as_str().unwrap_or_default();
            writeln!(
                csv,
                "{},{},{},{},{},{},{},{}",
                c.case.index,
                c.case.m.to_row(),
                c.case.t,
                c.case.eigenvalue,
                c.guarded,
                verdict,
                c.report.predicted.to_row(),
                c.report.computed.to_row()
            )
            .unwrap();
            writeln!(
                pretty,
                "{:>4}  t={} λ={}  m = {:<12} -> {}  [{verdict}]",
                c.case.index,
                c.case.t,
                c.case.eigenvalue,
                c.case.m.to_row(),
                c.report.computed.to_row()
            )
            .unwrap();
        }
        writeln!(pretty, "{} cases: {} agree, {} disagree, {} recorded", s.total, s.passed, s.failed, s.recorded)
            .unwrap();
        Output { json: to_value(s), csv, pretty }
    }
}
