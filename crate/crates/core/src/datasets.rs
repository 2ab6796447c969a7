//! Dataset generators and CSV persistence.
//!
//! The headline generator is [`gen_counterexample_s`]: 400 samples drawn from
//! four interleaved exponentially enveloped sinusoids, two with growing
//! ("sharp") amplitude and two with decaying ("soft") amplitude around zero.
//! That interleaving is what defeats least-squares fitting with smooth random
//! features.
//!
//! CSV schema: header `x0,...,x{n-1},t0,...,t{m-1}`, one row per sample,
//! values printed in round-trip decimal form.

use std::f64::consts::PI;
use std::path::Path;

use thiserror::Error;

use crate::matrix::{DenseMatrix, LinalgError};
use crate::rng::{rng_from_seed, uniform_vec};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("dataset i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv parse error at line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("csv header mismatch: expected {expected}, found '{found}'")]
    HeaderMismatch { expected: String, found: String },
    #[error("csv file is empty")]
    EmptyFile,
    #[error("dataset has no samples")]
    NoRows,
    #[error("inputs have {inputs} rows but targets have {targets}")]
    RowCountMismatch { inputs: usize, targets: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// N input vectors paired with N target vectors.
#[derive(Debug, Clone)]
pub struct Dataset {
    inputs: DenseMatrix,
    targets: DenseMatrix,
    name: String,
    provenance: String,
}

impl Dataset {
    pub fn new(
        inputs: DenseMatrix,
        targets: DenseMatrix,
        name: impl Into<String>,
        provenance: impl Into<String>,
    ) -> Result<Self, DatasetError> {
        if inputs.rows() != targets.rows() {
            return Err(DatasetError::RowCountMismatch {
                inputs: inputs.rows(),
                targets: targets.rows(),
            });
        }
        Ok(Dataset {
            inputs,
            targets,
            name: name.into(),
            provenance: provenance.into(),
        })
    }

    pub fn inputs(&self) -> &DenseMatrix {
        &self.inputs
    }

    pub fn targets(&self) -> &DenseMatrix {
        &self.targets
    }

    pub fn n_samples(&self) -> usize {
        self.inputs.rows()
    }

    pub fn input_dim(&self) -> usize {
        self.inputs.cols()
    }

    pub fn output_dim(&self) -> usize {
        self.targets.cols()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }
}

/// The 400-sample counterexample dataset S = S1 || S2 || S3 || S4.
///
/// For k = 1..=100:
/// - S1: x = k*pi/100,            t =  e^x  * sin(k*pi/10)
/// - S2: x = k*pi/100 + pi/400,   t =  e^-x * sin(k*pi/10 + pi/40)
/// - S3: x = k*pi/100 + pi/200,   t = -e^x  * sin(k*pi/10 + pi/20)
/// - S4: x = k*pi/100 + pi/300,   t = -e^-x * sin(k*pi/10 + pi/30)
///
/// Deterministic; rows are stored in the S1, S2, S3, S4 block order above.
pub fn gen_counterexample_s() -> Dataset {
    let mut xs = Vec::with_capacity(400);
    let mut ts = Vec::with_capacity(400);
    for k in 1..=100u32 {
        let k = f64::from(k);
        xs.push(k * PI / 100.0);
        ts.push((k * PI / 100.0).exp() * (k * PI / 10.0).sin());
    }
    for k in 1..=100u32 {
        let k = f64::from(k);
        let x = k * PI / 100.0 + PI / 400.0;
        xs.push(x);
        ts.push((-x).exp() * (k * PI / 10.0 + PI / 40.0).sin());
    }
    for k in 1..=100u32 {
        let k = f64::from(k);
        let x = k * PI / 100.0 + PI / 200.0;
        xs.push(x);
        ts.push(-(x.exp()) * (k * PI / 10.0 + PI / 20.0).sin());
    }
    for k in 1..=100u32 {
        let k = f64::from(k);
        let x = k * PI / 100.0 + PI / 300.0;
        xs.push(x);
        ts.push(-((-x).exp()) * (k * PI / 10.0 + PI / 30.0).sin());
    }
    let inputs = DenseMatrix::new(400, 1, xs).expect("finite by construction");
    let targets = DenseMatrix::new(400, 1, ts).expect("finite by construction");
    Dataset::new(
        inputs,
        targets,
        "counterexample-s",
        "gen_counterexample_s(): S1||S2||S3||S4, k=1..100 each",
    )
    .expect("equal row counts")
}

/// Unnormalized sinc with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Noisy sinc regression pair: train targets carry uniform noise from
/// [-0.2, 0.2], test targets are noise-free.
///
/// Inputs are uniform on (-10, 10). Draw order: per train sample x then
/// noise, then all test x.
pub fn gen_sinc_noise(
    n_train: usize,
    n_test: usize,
    seed: u64,
) -> Result<(Dataset, Dataset), DatasetError> {
    if n_train == 0 || n_test == 0 {
        return Err(DatasetError::NoRows);
    }
    let mut rng = rng_from_seed(seed);
    let mut train_x = Vec::with_capacity(n_train);
    let mut train_t = Vec::with_capacity(n_train);
    for _ in 0..n_train {
        let x = uniform_vec(&mut rng, 1, (-10.0, 10.0))[0];
        let noise = uniform_vec(&mut rng, 1, (-0.2, 0.2))[0];
        train_x.push(x);
        train_t.push(sinc(x) + noise);
    }
    let test_x = uniform_vec(&mut rng, n_test, (-10.0, 10.0));
    let test_t: Vec<f64> = test_x.iter().map(|&x| sinc(x)).collect();

    let provenance = format!("gen_sinc_noise(n_train={n_train}, n_test={n_test}, seed={seed})");
    let train = Dataset::new(
        DenseMatrix::new(n_train, 1, train_x)?,
        DenseMatrix::new(n_train, 1, train_t)?,
        "sinc-train",
        provenance.clone(),
    )?;
    let test = Dataset::new(
        DenseMatrix::new(n_test, 1, test_x)?,
        DenseMatrix::new(n_test, 1, test_t)?,
        "sinc-test",
        provenance,
    )?;
    Ok((train, test))
}

/// Appends one sample whose input equals input row 0 but whose target is
/// shifted by +1.0 in every component. Any hidden layer output matrix built
/// on the result has two identical rows.
pub fn gen_degenerate_duplicate(base: &Dataset) -> Dataset {
    let n = base.n_samples();
    let mut xs = base.inputs.as_slice().to_vec();
    xs.extend_from_slice(base.inputs.row(0));
    let mut ts = base.targets.as_slice().to_vec();
    ts.extend(base.targets.row(0).iter().map(|t| t + 1.0));
    let inputs = DenseMatrix::new(n + 1, base.input_dim(), xs).expect("finite by construction");
    let targets = DenseMatrix::new(n + 1, base.output_dim(), ts).expect("finite by construction");
    Dataset::new(
        inputs,
        targets,
        format!("{}+duplicate", base.name),
        format!("gen_degenerate_duplicate({})", base.provenance),
    )
    .expect("equal row counts")
}

fn expected_header(n: usize, m: usize) -> String {
    let mut fields: Vec<String> = (0..n).map(|j| format!("x{j}")).collect();
    fields.extend((0..m).map(|j| format!("t{j}")));
    fields.join(",")
}

/// Writes the dataset as CSV with round-trip decimal formatting.
pub fn save_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<(), DatasetError> {
    let mut out = String::new();
    out.push_str(&expected_header(dataset.input_dim(), dataset.output_dim()));
    out.push('\n');
    for i in 0..dataset.n_samples() {
        let fields: Vec<String> = dataset
            .inputs
            .row(i)
            .iter()
            .chain(dataset.targets.row(i))
            .map(|v| format!("{v}"))
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Loads a dataset written by [`save_csv`]. The header determines the input
/// and output dimensions.
pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset, DatasetError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    if text.trim().is_empty() {
        return Err(DatasetError::EmptyFile);
    }
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(DatasetError::EmptyFile)?;
    let fields: Vec<&str> = header.split(',').map(str::trim).collect();
    let n = fields
        .iter()
        .take_while(|f| f.starts_with('x'))
        .count();
    let m = fields.len() - n;
    let well_formed = n >= 1
        && m >= 1
        && fields[..n]
            .iter()
            .enumerate()
            .all(|(j, f)| **f == format!("x{j}"))
        && fields[n..]
            .iter()
            .enumerate()
            .all(|(j, f)| **f == format!("t{j}"));
    if !well_formed {
        return Err(DatasetError::HeaderMismatch {
            expected: "'x0,...,x{n-1},t0,...,t{m-1}'".to_string(),
            found: header.to_string(),
        });
    }

    let mut xs = Vec::new();
    let mut ts = Vec::new();
    let mut rows = 0usize;
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let line_no = idx as u64 + 1;
        let values: Vec<&str> = line.split(',').map(str::trim).collect();
        if values.len() != n + m {
            return Err(DatasetError::Parse {
                line: line_no,
                message: format!("expected {} fields, found {}", n + m, values.len()),
            });
        }
        for (col, raw) in values.iter().enumerate() {
            let v: f64 = raw.parse().map_err(|e| DatasetError::Parse {
                line: line_no,
                message: format!("field {col}: {e}"),
            })?;
            if !v.is_finite() {
                return Err(DatasetError::Parse {
                    line: line_no,
                    message: format!("field {col}: non-finite value {raw}"),
                });
            }
            if col < n {
                xs.push(v);
            } else {
                ts.push(v);
            }
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(DatasetError::NoRows);
    }
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".to_string());
    Dataset::new(
        DenseMatrix::new(rows, n, xs)?,
        DenseMatrix::new(rows, m, ts)?,
        name,
        format!("load_csv({})", path.display()),
    )
}
