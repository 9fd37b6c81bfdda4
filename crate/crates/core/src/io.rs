//! Text formats for partitions, embeddings, centralities and plot coordinates.
//!
//! * partition: TSV with header `node\tblock`, one row per node in internal
//!   id order, canonical block ids;
//! * embedding: CSV with header `node,b0,...,b{d-1}` and integer entries;
//! * node values (centrality targets): TSV with header `node\tvalue`;
//! * coordinates: CSV with header `node,pc1,pc2`.
//!
//! Readers accept rows in any order and key them by node label.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::embed::EmbeddingMatrix;
use crate::error::{Error, Result};
use crate::graph::{load_edge_list, Graph};
use crate::partition::Partition;

pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<Graph> {
    load_edge_list(BufReader::new(File::open(path)?))
}

/// Non-empty lines after the header, with 1-based line numbers.
fn data_lines<R: BufRead>(
    reader: R,
    expected_header: &[&str],
    separator: char,
) -> Result<Vec<(usize, Vec<String>)>> {
    let mut rows = Vec::new();
    let mut header_seen = false;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<String> = line.split(separator).map(|f| f.trim().to_owned()).collect();
        if !header_seen {
            header_seen = true;
            let names: Vec<&str> = fields.iter().map(String::as_str).collect();
            if names.len() < expected_header.len() || names[..expected_header.len()] != *expected_header {
                return Err(Error::parse(
                    i + 1,
                    format!("expected header starting with {:?}", expected_header.join(&separator.to_string())),
                ));
            }
            continue;
        }
        rows.push((i + 1, fields));
    }
    Ok(rows)
}

pub fn write_partition_tsv<W: Write>(g: &Graph, p: &Partition, mut out: W) -> Result<()> {
    crate::partition::ensure_matches(g, p)?;
    writeln!(out, "node\tblock")?;
    for v in 0..g.num_nodes() {
        writeln!(out, "{}\t{}", g.label(v), p.block_of(v))?;
    }
    Ok(())
}

/// Reads a partition of `g`'s nodes. Block ids in the file are arbitrary
/// tokens; the result is canonically renumbered.
pub fn read_partition_tsv<R: BufRead>(g: &Graph, reader: R) -> Result<Partition> {
    let mut assignment: Vec<Option<String>> = vec![None; g.num_nodes()];
    for (line, fields) in data_lines(reader, &["node", "block"], '\t')? {
        if fields.len() != 2 {
            return Err(Error::parse(line, "expected two tab-separated fields"));
        }
        let v = g
            .node_id(&fields[0])
            .ok_or_else(|| Error::parse(line, format!("unknown node {:?}", fields[0])))?;
        if assignment[v].replace(fields[1].clone()).is_some() {
            return Err(Error::parse(line, format!("node {:?} listed twice", fields[0])));
        }
    }
    let mut labels = Vec::with_capacity(assignment.len());
    for (v, block) in assignment.into_iter().enumerate() {
        labels.push(block.ok_or_else(|| {
            Error::validation(format!("partition file has no block for node {:?}", g.label(v)))
        })?);
    }
    Ok(Partition::from_assignment(&labels))
}

pub fn write_embedding_csv<W: Write>(e: &EmbeddingMatrix, mut out: W) -> Result<()> {
    let mut header = String::from("node");
    for k in 0..e.num_cols() {
        header.push_str(&format!(",b{k}"));
    }
    writeln!(out, "{header}")?;
    for (i, label) in e.node_labels().iter().enumerate() {
        let mut line = label.clone();
        for x in e.row(i) {
            line.push(',');
            line.push_str(&x.to_string());
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn read_embedding_csv<R: BufRead>(reader: R) -> Result<EmbeddingMatrix> {
    let mut lines = reader.lines();
    let header = loop {
        match lines.next() {
            Some(line) => {
                let line = line?;
                if !line.trim().is_empty() {
                    break line;
                }
            }
            None => return Err(Error::parse(1, "missing embedding header")),
        }
    };
    let columns: Vec<&str> = header.trim_end().split(',').collect();
    if columns.first() != Some(&"node") {
        return Err(Error::parse(1, "embedding header must start with \"node\""));
    }
    let d = columns.len() - 1;

    let mut labels = Vec::new();
    let mut values = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = i + 2;
        let fields: Vec<&str> = line.trim_end().split(',').collect();
        if fields.len() != d + 1 {
            return Err(Error::parse(
                lineno,
                format!("expected {} fields, found {}", d + 1, fields.len()),
            ));
        }
        labels.push(fields[0].to_owned());
        for f in &fields[1..] {
            values.push(
                f.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(lineno, format!("{f:?} is not a nonnegative integer")))?,
            );
        }
    }
    EmbeddingMatrix::from_rows(labels, d, values)
}

pub fn write_node_values_tsv<W: Write>(labels: &[String], values: &[f64], mut out: W) -> Result<()> {
    writeln!(out, "node\tvalue")?;
    for (label, value) in labels.iter().zip(values) {
        writeln!(out, "{label}\t{value}")?;
    }
    Ok(())
}

pub fn read_node_values_tsv<R: BufRead>(reader: R) -> Result<Vec<(String, f64)>> {
    data_lines(reader, &["node", "value"], '\t')?
        .into_iter()
        .map(|(line, fields)| {
            if fields.len() != 2 {
                return Err(Error::parse(line, "expected two tab-separated fields"));
            }
            let value = fields[1]
                .parse::<f64>()
                .map_err(|_| Error::parse(line, format!("{:?} is not a number", fields[1])))?;
            Ok((fields[0].clone(), value))
        })
        .collect()
}

/// Orders `pairs` to follow `labels`. Every label must have exactly one value.
pub fn align_values(labels: &[String], pairs: &[(String, f64)]) -> Result<Vec<f64>> {
    let mut by_label: HashMap<&str, f64> = HashMap::with_capacity(pairs.len());
    for (label, value) in pairs {
        if by_label.insert(label, *value).is_some() {
            return Err(Error::validation(format!("duplicate value for node {label:?}")));
        }
    }
    labels
        .iter()
        .map(|l| {
            by_label
                .get(l.as_str())
                .copied()
                .ok_or_else(|| Error::validation(format!("no value for node {l:?}")))
        })
        .collect()
}

pub fn write_coords_csv<W: Write>(labels: &[String], coords: &[[f64; 2]], mut out: W) -> Result<()> {
    writeln!(out, "node,pc1,pc2")?;
    for (label, [x, y]) in labels.iter().zip(coords) {
        writeln!(out, "{label},{x},{y}")?;
    }
    Ok(())
}

/// Reads a `node label` class file (whitespace separated, optional header
/// line whose first token is `node`).
pub fn read_node_classes<R: BufRead>(reader: R) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() || tokens[0].starts_with('#') {
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::parse(i + 1, "expected a node and a class"));
        }
        if out.is_empty() && tokens[0] == "node" {
            continue;
        }
        out.push((tokens[0].to_owned(), tokens[1].to_owned()));
    }
    Ok(out)
}
