use crate::analysis::{Cell, CoverageMatrix};
use crate::model::GuideType;

fn cell_text(cell: &Cell) -> String {
    match cell {
        Cell::Covered { ucas } => {
            let ids: Vec<&str> = ucas.iter().map(|u| u.as_str()).collect();
            format!("covered:{}", ids.join(";"))
        }
        Cell::Waived { .. } => "waived".into(),
        Cell::Gap => "gap".into(),
    }
}

/// One CSV line per matrix row, in matrix order, with RFC 4180 quoting.
pub fn coverage_csv(matrix: &CoverageMatrix) -> String {
    let mut writer = ::csv::WriterBuilder::new()
        .terminator(::csv::Terminator::CRLF)
        .from_writer(Vec::new());
    let mut header = vec!["controller", "action"];
    header.extend(GuideType::ALL.iter().map(|g| g.as_str()));
    writer.write_record(&header).expect("writing to memory");
    for row in &matrix.rows {
        let mut record = vec![row.controller.to_string(), row.action.to_string()];
        record.extend(row.cells.iter().map(cell_text));
        writer.write_record(&record).expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
}
