//! Line-oriented input documents.
//!
//! ```text
//! # comments run to the end of the line
//! ring 32003 x0 x1 x2 x3 x4
//! modulus x0*x3 - x1*x2
//! ideal C
//! x0*x2 - x1^2
//! x1*x3 - x2^2
//! matrix phi 2 2
//! x2, x0
//! x1, -x3
//! module A twists(-1,-1)
//! x3, x1
//! -x2, -x0
//! ```
//!
//! The `ring` line comes first. Each `ideal` block takes one generator per
//! line; `matrix name r c` takes exactly `r` rows of `c` comma-separated
//! entries; `module name twists(a1,...)` takes one comma-separated row per
//! twist, the columns being the relations of `coker(⊕ P(a_i) ← ...)`. A block
//! ends at the next keyword line. Blank lines are ignored.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::GradedIdeal;
use crate::homology::{FreeGradedModule, GradedMap, ModulePresentation};
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingDescriptor};

/// A named ideal with the line number of its header.
#[derive(Clone, Debug)]
pub struct NamedIdeal {
    pub name: String,
    pub line: usize,
    pub generators: Vec<Polynomial>,
}

/// A named homogeneous matrix; row and column degrees are inferred with the
/// first row in degree 0.
#[derive(Clone, Debug)]
pub struct NamedMatrix {
    pub name: String,
    pub line: usize,
    pub map: GradedMap,
}

/// A named module `coker(relations)` on generators `P(a_i)`.
#[derive(Clone, Debug)]
pub struct NamedModule {
    pub name: String,
    pub line: usize,
    pub twists: Vec<i32>,
    pub relations: GradedMap,
}

#[derive(Clone, Debug)]
pub struct InputDocument {
    pub ring: Arc<PolyRing>,
    pub modulus: Option<Polynomial>,
    pub ideals: Vec<NamedIdeal>,
    pub matrices: Vec<NamedMatrix>,
    pub modules: Vec<NamedModule>,
}

impl InputDocument {
    pub fn descriptor(&self) -> RingDescriptor {
        let d = RingDescriptor::new(self.ring.clone());
        match &self.modulus {
            Some(f) => d.with_modulus(f.clone()).expect("checked while parsing"),
            None => d,
        }
    }

    pub fn ideal(&self, name: &str) -> Option<GradedIdeal> {
        self.ideals
            .iter()
            .find(|i| i.name == name)
            .map(|i| GradedIdeal::new(&self.ring, i.generators.clone()).expect("homogeneous"))
    }

    pub fn matrix(&self, name: &str) -> Option<&GradedMap> {
        self.matrices.iter().find(|m| m.name == name).map(|m| &m.map)
    }

    /// The module, presented over the hypersurface when a modulus is set.
    pub fn module(&self, name: &str) -> Option<ModulePresentation> {
        let m = self.modules.iter().find(|m| m.name == name)?;
        Some(match &self.modulus {
            Some(f) => ModulePresentation::over_hypersurface(m.relations.clone(), f),
            None => ModulePresentation::new(m.relations.clone()),
        }
        .with_name(m.name.clone()))
    }
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        column,
        message: message.into(),
    })
}

/// A source line with comments removed.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    /// 1-based column of a byte offset.
    fn column(&self, offset: usize) -> usize {
        self.text[..offset].chars().count() + 1
    }
}

/// An entry with its line and column.
type Entry = (Polynomial, usize, usize);

enum Block {
    None,
    Ideal(usize),
    Matrix { index: usize, rows: usize, cols: usize, line: usize, entries: Vec<Vec<Entry>> },
    Module { index: usize, line: usize, twists: Vec<i32>, entries: Vec<Vec<Entry>> },
}

/// Parses a document; errors carry 1-based line and column.
pub fn parse_input(text: &str) -> Result<InputDocument> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line {
            number: i + 1,
            text: l.split('#').next().unwrap_or(""),
        })
        .collect();
    let mut it = lines.iter().filter(|l| !l.text.trim().is_empty());
    let Some(first) = it.next() else {
        return err(1, 1, "empty document: expected a `ring` line");
    };
    let ring = parse_ring(first)?;
    let mut doc = InputDocument {
        ring: ring.clone(),
        modulus: None,
        ideals: Vec::new(),
        matrices: Vec::new(),
        modules: Vec::new(),
    };
    let mut block = Block::None;
    for line in it {
        let trimmed = line.text.trim_start();
        let start = line.text.len() - trimmed.len();
        let keyword = trimmed.split_whitespace().next().unwrap_or("");
        let rest_offset = start + keyword.len();
        let rest = &line.text[rest_offset..];
        match keyword {
            "ring" => return err(line.number, start + 1, "only one `ring` line is allowed"),
            "modulus" | "ideal" | "matrix" | "module" => {
                finish_block(&mut doc, std::mem::replace(&mut block, Block::None))?;
                match keyword {
                    "modulus" => {
                        if doc.modulus.is_some() {
                            return err(line.number, start + 1, "modulus given twice");
                        }
                        let f = poly_at(&ring, line, rest_offset, rest)?;
                        match f.homogeneous_degree() {
                            Some(d) if d >= 2 => doc.modulus = Some(f),
                            _ => {
                                return err(
                                    line.number,
                                    rest_offset + 1,
                                    "modulus must be homogeneous of degree at least 2",
                                )
                            }
                        }
                    }
                    "ideal" => {
                        let name = single_name(line, rest_offset, rest)?;
                        doc.ideals.push(NamedIdeal { name, line: line.number, generators: Vec::new() });
                        block = Block::Ideal(doc.ideals.len() - 1);
                    }
                    "matrix" => {
                        let words: Vec<&str> = rest.split_whitespace().collect();
                        if words.len() != 3 {
                            return err(line.number, rest_offset + 1, "expected `matrix <name> <rows> <cols>`");
                        }
                        let dims: Vec<usize> = words[1..]
                            .iter()
                            .map(|w| w.parse::<usize>())
                            .collect::<std::result::Result<_, _>>()
                            .or_else(|_| err(line.number, rest_offset + 1, "matrix dimensions must be natural numbers"))?;
                        doc.matrices.push(NamedMatrix {
                            name: words[0].to_string(),
                            line: line.number,
                            map: GradedMap::zero(&ring, FreeGradedModule::zero(), FreeGradedModule::zero()),
                        });
                        block = Block::Matrix {
                            index: doc.matrices.len() - 1,
                            rows: dims[0],
                            cols: dims[1],
                            line: line.number,
                            entries: Vec::new(),
                        };
                    }
                    _ => {
                        let (name, twists) = parse_module_header(line, rest_offset, rest)?;
                        doc.modules.push(NamedModule {
                            name,
                            line: line.number,
                            twists: twists.clone(),
                            relations: GradedMap::zero(&ring, FreeGradedModule::zero(), FreeGradedModule::zero()),
                        });
                        block = Block::Module { index: doc.modules.len() - 1, line: line.number, twists, entries: Vec::new() };
                    }
                }
            }
            _ => match &mut block {
                Block::None => {
                    return err(line.number, start + 1, format!("unexpected `{keyword}` outside a block"))
                }
                Block::Ideal(i) => {
                    let g = poly_at(&ring, line, 0, line.text)?;
                    if !g.is_zero() && !g.is_homogeneous() {
                        return err(line.number, start + 1, "inhomogeneous generator");
                    }
                    doc.ideals[*i].generators.push(g);
                }
                Block::Matrix { rows, cols, entries, .. } => {
                    if entries.len() == *rows {
                        return err(line.number, start + 1, format!("matrix has only {rows} rows"));
                    }
                    let row = parse_row(&ring, line)?;
                    if row.len() != *cols {
                        return err(line.number, start + 1, format!("expected {cols} entries, found {}", row.len()));
                    }
                    entries.push(row);
                }
                Block::Module { twists, entries, .. } => {
                    if entries.len() == twists.len() {
                        return err(line.number, start + 1, format!("module has only {} generators", twists.len()));
                    }
                    let row = parse_row(&ring, line)?;
                    if let Some(first) = entries.first() {
                        if row.len() != first.len() {
                            return err(line.number, start + 1, format!("expected {} entries, found {}", first.len(), row.len()));
                        }
                    }
                    entries.push(row);
                }
            },
        }
    }
    finish_block(&mut doc, block)?;
    Ok(doc)
}

fn parse_ring(line: &Line) -> Result<Arc<PolyRing>> {
    let mut words = line.text.split_whitespace();
    let start = line.text.len() - line.text.trim_start().len();
    if words.next() != Some("ring") {
        return err(line.number, start + 1, "expected `ring <p> <variables...>`");
    }
    let p = words
        .next()
        .and_then(|w| w.parse::<u32>().ok())
        .ok_or_else(|| Error::Parse { line: line.number, column: start + 6, message: "expected a prime characteristic".into() })?;
    let vars: Vec<String> = words.map(str::to_string).collect();
    if vars.is_empty() {
        return err(line.number, line.text.trim_end().len() + 1, "expected at least one variable");
    }
    PolyRing::from_names(p, vars).map_err(|e| Error::Parse { line: line.number, column: start + 6, message: e.to_string() })
}

fn single_name(line: &Line, offset: usize, rest: &str) -> Result<String> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    if words.len() != 1 {
        return err(line.number, offset + 1, "expected exactly one name");
    }
    Ok(words[0].to_string())
}

fn parse_module_header(line: &Line, offset: usize, rest: &str) -> Result<(String, Vec<i32>)> {
    let trimmed = rest.trim_start();
    let lead = rest.len() - trimmed.len();
    let name_len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
    let name = &trimmed[..name_len];
    let tail = trimmed[name_len..].trim();
    let col = line.column(offset + lead + name_len) + 1;
    let inner = tail
        .strip_prefix("twists(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse { line: line.number, column: col, message: "expected `twists(a1,...)`".into() })?;
    if name.is_empty() {
        return err(line.number, offset + 1, "missing module name");
    }
    let twists = inner
        .split(',')
        .map(|w| w.trim().parse::<i32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .or_else(|_| err(line.number, col, "twists must be integers"))?;
    Ok((name.to_string(), twists))
}

fn poly_at(ring: &Arc<PolyRing>, line: &Line, offset: usize, text: &str) -> Result<Polynomial> {
    parse_polynomial(ring, text).map_err(|(c, message)| Error::Parse {
        line: line.number,
        column: line.column(offset) + c - 1,
        message,
    })
}

/// Comma-separated entries with the column where each starts.
fn parse_row(ring: &Arc<PolyRing>, line: &Line) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in line.text.split(',') {
        let p = poly_at(ring, line, offset, piece)?;
        let lead = piece.len() - piece.trim_start().len();
        let col = line.column(offset + lead);
        if !p.is_zero() && !p.is_homogeneous() {
            return err(line.number, col, "inhomogeneous entry");
        }
        out.push((p, line.number, col));
        offset += piece.len() + 1;
    }
    Ok(out)
}

fn finish_block(doc: &mut InputDocument, block: Block) -> Result<()> {
    let ring = doc.ring.clone();
    match block {
        Block::None => Ok(()),
        Block::Ideal(i) => {
            if doc.ideals[i].generators.iter().all(|g| g.is_zero()) {
                return err(doc.ideals[i].line, 1, format!("ideal `{}` has no generators", doc.ideals[i].name));
            }
            Ok(())
        }
        Block::Matrix { index, rows, cols, line, entries } => {
            if entries.len() != rows {
                return err(line, 1, format!("matrix expects {rows} rows, found {}", entries.len()));
            }
            let (tgt, src) = infer_degrees(&entries, cols, None)?;
            let columns = (0..cols).map(|j| entries.iter().map(|r| r[j].0.clone()).collect()).collect();
            doc.matrices[index].map = GradedMap::new(
                &ring,
                FreeGradedModule::from_degrees(src),
                FreeGradedModule::from_degrees(tgt),
                columns,
            )?;
            Ok(())
        }
        Block::Module { index, line, twists, entries } => {
            if entries.len() != twists.len() && !entries.is_empty() {
                return err(line, 1, format!("module expects {} relation rows, found {}", twists.len(), entries.len()));
            }
            let tgt: Vec<i32> = twists.iter().map(|a| -a).collect();
            let ncols = entries.first().map_or(0, |r| r.len());
            let (_, src) = infer_degrees(&entries, ncols, Some(&tgt))?;
            let columns = (0..ncols).map(|j| entries.iter().map(|r| r[j].0.clone()).collect()).collect();
            doc.modules[index].relations = GradedMap::new(
                &ring,
                FreeGradedModule::from_degrees(src),
                FreeGradedModule::from_degrees(tgt),
                columns,
            )?;
            Ok(())
        }
    }
}

/// Row and column degrees with `deg a_ij = src_j - tgt_i`. Rows not touched
/// by any nonzero entry default to degree 0, empty columns to 0.
fn infer_degrees(
    entries: &[Vec<Entry>],
    ncols: usize,
    fixed: Option<&[i32]>,
) -> Result<(Vec<i32>, Vec<i32>)> {
    let nrows = entries.len();
    let mut tgt: Vec<Option<i32>> = match fixed {
        Some(t) => t.iter().map(|&d| Some(d)).collect(),
        None => vec![None; nrows],
    };
    let mut src: Vec<Option<i32>> = vec![None; ncols];
    let deg = |i: usize, j: usize| entries[i][j].0.homogeneous_degree().map(|d| d as i32);
    loop {
        // propagate along nonzero entries, then seed a fresh component
        let mut progress = true;
        while progress {
            progress = false;
            for i in 0..nrows {
                for j in 0..ncols {
                    let Some(d) = deg(i, j) else { continue };
                    match (tgt[i], src[j]) {
                        (Some(t), None) => {
                            src[j] = Some(t + d);
                            progress = true;
                        }
                        (None, Some(s)) => {
                            tgt[i] = Some(s - d);
                            progress = true;
                        }
                        (Some(t), Some(s)) if s - t != d => {
                            let (_, line, col) = entries[i][j];
                            return err(line, col, format!("entry ({i},{j}) has degree {d}, expected {}", s - t));
                        }
                        _ => {}
                    }
                }
            }
        }
        match (0..nrows).find(|&i| tgt[i].is_none() && (0..ncols).any(|j| deg(i, j).is_some())) {
            Some(i) => tgt[i] = Some(0),
            None => break,
        }
    }
    Ok((
        tgt.into_iter().map(|t| t.unwrap_or(0)).collect(),
        src.into_iter().map(|s| s.unwrap_or(0)).collect(),
    ))
}
