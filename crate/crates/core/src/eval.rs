//! PSB classification files, interpolated precision-recall curves and
//! average precision.

use std::collections::{BTreeSet, HashMap};
use std::io::Write;

use ndarray::Array2;

use crate::error::{Error, Result};

/// Model-to-class assignment from a `.cla` file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ClassificationDB {
    pub classes: Vec<(String, Vec<String>)>,
    model_to_class: HashMap<String, usize>,
}

impl ClassificationDB {
    pub fn from_classes(classes: Vec<(String, Vec<String>)>) -> Result<Self> {
        let mut model_to_class = HashMap::new();
        for (ci, (name, models)) in classes.iter().enumerate() {
            for m in models {
                if let Some(prev) = model_to_class.insert(m.clone(), ci) {
                    return Err(Error::InvalidInput(format!(
                        "model {m} listed in both {} and {name}",
                        classes[prev].0
                    )));
                }
            }
        }
        Ok(Self {
            classes,
            model_to_class,
        })
    }

    pub fn class_of(&self, model: &str) -> Option<&str> {
        self.model_to_class
            .get(model)
            .map(|&c| self.classes[c].0.as_str())
    }

    pub fn members(&self, model: &str) -> Option<&[String]> {
        self.model_to_class
            .get(model)
            .map(|&c| self.classes[c].1.as_slice())
    }

    /// Models that can act as queries: classified, in a class with another member.
    pub fn queryable(&self, model: &str) -> bool {
        self.members(model).is_some_and(|m| m.len() >= 2)
    }

    pub fn model_count(&self) -> usize {
        self.model_to_class.len()
    }

    pub fn models(&self) -> impl Iterator<Item = &str> {
        self.classes
            .iter()
            .flat_map(|(_, m)| m.iter().map(String::as_str))
    }

    /// Writes the PSB text format.
    pub fn write_cla(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "PSB 1")?;
        writeln!(w, "{} {}", self.classes.len(), self.model_count())?;
        for (name, models) in &self.classes {
            writeln!(w)?;
            writeln!(w, "{name} 0 {}", models.len())?;
            for m in models {
                writeln!(w, "{m}")?;
            }
        }
        Ok(())
    }
}

/// Parses a PSB `.cla` file. The class hierarchy is flattened: every model
/// belongs to the class block that lists it.
pub fn parse_cla(bytes: &[u8]) -> Result<ClassificationDB> {
    let text = String::from_utf8_lossy(bytes);
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let last_line = text.lines().count().max(1);

    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty classification file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("PSB") || toks.next() != Some("1") || toks.next().is_some() {
        return Err(Error::parse(ln, "header mismatch, expected \"PSB 1\""));
    }

    let (ln, counts) = lines
        .next()
        .ok_or_else(|| Error::parse(last_line, "missing class/model counts"))?;
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(ln, format!("non-numeric count {t:?}")))
        })
        .collect::<Result<_>>()?;
    let [num_classes, num_models] = counts[..] else {
        return Err(Error::parse(ln, "expected \"numClasses numModels\""));
    };

    let mut classes = Vec::with_capacity(num_classes);
    let mut listed = 0;
    for _ in 0..num_classes {
        let (ln, l) = lines.next().ok_or_else(|| {
            Error::parse(
                last_line,
                format!(
                    "count mismatch: {num_classes} classes declared, {} found",
                    classes.len()
                ),
            )
        })?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        let [name, _parent, n] = toks[..] else {
            return Err(Error::parse(ln, "expected \"name parentName numModels\""));
        };
        let n: usize = n
            .parse()
            .map_err(|_| Error::parse(ln, format!("non-numeric model count {n:?}")))?;
        let mut models = Vec::with_capacity(n);
        for _ in 0..n {
            let (mln, m) = lines.next().ok_or_else(|| {
                Error::parse(
                    last_line,
                    format!(
                        "count mismatch: class {name} declares {n} models, {} listed",
                        models.len()
                    ),
                )
            })?;
            if m.split_whitespace().count() != 1 {
                return Err(Error::parse(
                    mln,
                    format!("count mismatch: class {name} declares {n} models, found {m:?}"),
                ));
            }
            models.push(m.to_string());
        }
        listed += n;
        classes.push((name.to_string(), models));
    }
    if let Some((ln, l)) = lines.next() {
        return Err(Error::parse(
            ln,
            format!("unexpected trailing content {l:?}"),
        ));
    }
    if listed != num_models {
        return Err(Error::parse(
            last_line,
            format!("count mismatch: {num_models} models declared, {listed} listed"),
        ));
    }
    ClassificationDB::from_classes(classes)
}

/// Averaged, interpolated precision at uniform recall levels.
#[derive(Debug, Clone, PartialEq)]
pub struct PRCurve {
    /// `(recall, precision)` at recall levels `1/L, 2/L, …, 1`.
    pub points: Vec<(f64, f64)>,
    /// Area under the curve: mean of the interpolated precisions.
    pub ap: f64,
    /// Number of queries averaged.
    pub queries: usize,
}

impl PRCurve {
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "recall,precision")?;
        for (r, p) in &self.points {
            writeln!(w, "{r},{p}")?;
        }
        writeln!(w, "AP,{}", self.ap)
    }
}

fn recall_levels(levels: usize) -> impl Iterator<Item = f64> {
    (1..=levels).map(move |i| i as f64 / levels as f64)
}

/// Interpolated precision of one query at `levels` uniform recall levels.
///
/// `ranked` is the retrieval order; the query itself is skipped wherever it
/// appears. Returns `None` (with a warning) when the query is unclassified or
/// alone in its class.
pub fn pr_curve<'a>(
    query: &str,
    ranked: impl IntoIterator<Item = &'a str>,
    classes: &ClassificationDB,
    levels: usize,
) -> Option<Vec<(f64, f64)>> {
    let Some(members) = classes.members(query) else {
        log::warn!("query {query} is not classified; skipped");
        return None;
    };
    if members.len() < 2 || levels == 0 {
        log::warn!("query {query} has no relevant models; skipped");
        return None;
    }
    let class = classes.class_of(query);
    let relevant = (members.len() - 1) as f64;

    // (recall, precision) at each cutoff that retrieves a relevant model;
    // interpolation only ever picks those.
    let mut hits = Vec::new();
    let mut k = 0usize;
    let mut rel = 0usize;
    for id in ranked.into_iter().filter(|&id| id != query) {
        k += 1;
        if classes.class_of(id) == class {
            rel += 1;
            hits.push((rel as f64 / relevant, rel as f64 / k as f64));
        }
    }
    // Running max from the tail: best precision at recall ≥ r.
    let mut best = vec![0.0; hits.len() + 1];
    for i in (0..hits.len()).rev() {
        best[i] = f64::max(best[i + 1], hits[i].1);
    }
    Some(
        recall_levels(levels)
            .map(|r| {
                // Tolerate 1/levels rounding when comparing recalls.
                let first = hits.partition_point(|&(rec, _)| rec < r - 1e-12);
                (r, best[first])
            })
            .collect(),
    )
}

/// Macro-averaged PR curve over every queryable model of a distance matrix.
///
/// Rows are queries; each row is ranked ascending with ties broken by model
/// id. Unclassified models stay in the database as distractors.
pub fn average_pr(
    ids: &[String],
    matrix: &Array2<f64>,
    classes: &ClassificationDB,
    levels: usize,
) -> Result<PRCurve> {
    if matrix.dim() != (ids.len(), ids.len()) {
        return Err(Error::InvalidInput(format!(
            "{} ids for a {:?} distance matrix",
            ids.len(),
            matrix.dim()
        )));
    }
    if levels == 0 {
        return Err(Error::Config("recall levels must be positive".into()));
    }
    let present: BTreeSet<&str> = ids.iter().map(String::as_str).collect();
    let missing: Vec<&str> = classes.models().filter(|m| !present.contains(m)).collect();
    if !missing.is_empty() {
        return Err(Error::InvalidInput(format!(
            "classified models missing from the distance matrix: {}",
            missing.join(", ")
        )));
    }

    let mut sums = vec![0.0; levels];
    let mut queries = 0usize;
    for (qi, query) in ids.iter().enumerate() {
        if !classes.queryable(query) {
            continue;
        }
        let row = matrix.row(qi);
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_by(|&a, &b| row[a].total_cmp(&row[b]).then_with(|| ids[a].cmp(&ids[b])));
        let Some(points) = pr_curve(
            query,
            order.iter().map(|&j| ids[j].as_str()),
            classes,
            levels,
        ) else {
            continue;
        };
        for (s, (_, p)) in sums.iter_mut().zip(points) {
            *s += p;
        }
        queries += 1;
    }
    if queries == 0 {
        return Err(Error::InvalidInput(
            "no classified query with a relevant model".into(),
        ));
    }
    let points: Vec<(f64, f64)> = recall_levels(levels)
        .zip(&sums)
        .map(|(r, s)| (r, s / queries as f64))
        .collect();
    let ap = points.iter().map(|p| p.1).sum::<f64>() / levels as f64;
    Ok(PRCurve {
        points,
        ap,
        queries,
    })
}
