//! Reading and writing sampled functions.
//!
//! CSV: a header with coordinate columns (`x` or `x1, x2, ..`, then `u` or
//! `u1, u2, ..` for phase-space data) followed by `re, im`; one row per grid
//! point. JSON: `{"x": [[nodes]..], "u": [[nodes]..], "re": [..], "im": [..]}`
//! with values in row-major order over the x axes then the u axes; `u` is
//! omitted for functions on `R^n`.

use std::io::{Read, Write};
use std::path::Path;

use ndarray::{ArrayD, IxDyn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::function::{PhaseSpaceFunction, SampledFunction};
use crate::numerics::grid::{Axis, GridSpec};
use crate::C64;

#[derive(Clone, Debug)]
pub enum Ingested {
    Line(SampledFunction),
    Phase(PhaseSpaceFunction),
}

impl Ingested {
    pub fn into_line(self) -> Result<SampledFunction> {
        match self {
            Ingested::Line(f) => Ok(f),
            Ingested::Phase(_) => Err(Error::InvalidArgument("expected a function on R^n, got phase-space data".into())),
        }
    }

    pub fn into_phase(self) -> Result<PhaseSpaceFunction> {
        match self {
            Ingested::Phase(f) => Ok(f),
            Ingested::Line(_) => Err(Error::InvalidArgument("expected phase-space data".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Json,
}

impl InputFormat {
    pub fn from_path(path: &Path) -> Result<Self> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Ok(InputFormat::Csv),
            Some("json") => Ok(InputFormat::Json),
            _ => Err(Error::InvalidArgument(format!("cannot tell the format of {}", path.display()))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonFunction {
    x: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    u: Vec<Vec<f64>>,
    re: Vec<f64>,
    im: Vec<f64>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn build(x_axes: Vec<Vec<f64>>, u_axes: Vec<Vec<f64>>, values: Vec<C64>) -> Result<Ingested> {
    if x_axes.is_empty() {
        return Err(parse_err(1, "no coordinate columns"));
    }
    if !u_axes.is_empty() && u_axes.len() != x_axes.len() {
        return Err(parse_err(1, "x and u need the same number of axes"));
    }
    let phase = !u_axes.is_empty();
    let axes = x_axes.into_iter().chain(u_axes).map(Axis::from_nodes).collect::<Result<Vec<_>>>()?;
    let grid = GridSpec::new(axes)?;
    if grid.len() != values.len() {
        return Err(parse_err(1, format!("{} values for a grid of {} points", values.len(), grid.len())));
    }
    let values = ArrayD::from_shape_vec(IxDyn(&grid.shape()), values).expect("length checked");
    Ok(if phase { Ingested::Phase(PhaseSpaceFunction::new(grid, values)?) } else { Ingested::Line(SampledFunction::new(grid, values)?) })
}

fn coordinate_rank(name: &str) -> Option<(u8, usize)> {
    let (head, tail) = name.split_at(1);
    let kind = match head {
        "x" => 0,
        "u" => 1,
        _ => return None,
    };
    if tail.is_empty() {
        return Some((kind, 1));
    }
    tail.parse().ok().map(|k| (kind, k))
}

/// Axis nodes from one coordinate column: values in order of first
/// appearance, which must increase.
fn axis_from_column(col: &[f64]) -> Result<Vec<f64>> {
    let mut nodes: Vec<f64> = Vec::new();
    for &v in col {
        if !nodes.contains(&v) {
            if nodes.last().is_some_and(|&l| v < l) {
                return Err(Error::InvalidGrid(format!("axis is not monotone at {v}")));
            }
            nodes.push(v);
        }
    }
    Ok(nodes)
}

pub fn read_csv<R: Read>(reader: R) -> Result<Ingested> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
    let find = |name: &str| headers.iter().position(|h| h == name).ok_or_else(|| parse_err(1, format!("missing column `{name}`")));
    let re_col = find("re")?;
    let im_col = find("im")?;
    let mut coords: Vec<((u8, usize), usize)> = Vec::new();
    for (i, h) in headers.iter().enumerate() {
        match coordinate_rank(h) {
            Some(r) => coords.push((r, i)),
            None if i == re_col || i == im_col => {}
            None => return Err(parse_err(1, format!("unexpected column `{h}`"))),
        }
    }
    coords.sort();
    let mut cols: Vec<Vec<f64>> = vec![Vec::new(); coords.len()];
    let mut values = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| parse_err(e.position().map_or(0, |p| p.line() as usize), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let num = |i: usize| -> Result<f64> {
            let s = rec.get(i).ok_or_else(|| parse_err(line, "short row"))?;
            s.parse::<f64>().map_err(|_| parse_err(line, format!("not a number: `{s}`")))
        };
        for (k, (_, i)) in coords.iter().enumerate() {
            cols[k].push(num(*i)?);
        }
        values.push(C64::new(num(re_col)?, num(im_col)?));
    }
    let axes = cols.iter().map(|c| axis_from_column(c)).collect::<Result<Vec<_>>>()?;
    // every row must sit at the row-major position implied by its coordinates
    let shape: Vec<usize> = axes.iter().map(Vec::len).collect();
    let total: usize = shape.iter().product();
    if total != values.len() {
        return Err(parse_err(1, format!("{} rows do not fill a {:?} tensor grid", values.len(), shape)));
    }
    let mut placed = vec![None; total];
    for (row, v) in values.iter().enumerate() {
        let mut flat = 0;
        for (k, axis) in axes.iter().enumerate() {
            let pos = axis.iter().position(|&a| a == cols[k][row]).expect("node from this column");
            flat = flat * shape[k] + pos;
        }
        if placed[flat].replace(*v).is_some() {
            return Err(parse_err(row + 2, "duplicate grid point"));
        }
    }
    let values: Vec<C64> = placed.into_iter().map(|v| v.expect("all points filled")).collect();
    let nx = coords.iter().filter(|((kind, _), _)| *kind == 0).count();
    let mut axes = axes;
    let u_axes = axes.split_off(nx);
    build(axes, u_axes, values)
}

pub fn read_json<R: Read>(reader: R) -> Result<Ingested> {
    let f: JsonFunction = serde_json::from_reader(reader).map_err(|e| parse_err(e.line(), e.to_string()))?;
    if f.re.len() != f.im.len() {
        return Err(parse_err(1, "`re` and `im` differ in length"));
    }
    let values = f.re.iter().zip(&f.im).map(|(&a, &b)| C64::new(a, b)).collect();
    build(f.x, f.u, values)
}

/// Reads a function and, when `nodes` is given and the file uses other
/// nodes, resamples it onto the Gauss-Hermite grid of that order.
pub fn ingest_function(path: &Path, format: InputFormat, nodes: Option<usize>) -> Result<Ingested> {
    let file = std::fs::File::open(path)?;
    let raw = match format {
        InputFormat::Csv => read_csv(file)?,
        InputFormat::Json => read_json(file)?,
    };
    let Some(m) = nodes else { return Ok(raw) };
    Ok(match raw {
        Ingested::Line(f) => {
            let target = GridSpec::gauss_hermite(f.dim(), m, 1.0)?;
            Ingested::Line(if same_nodes(&f.grid, &target) { SampledFunction::new(target, f.values)? } else { f.resample(&target)? })
        }
        Ingested::Phase(f) => {
            let target = GridSpec::gauss_hermite(f.grid.dim(), m, 1.0)?;
            Ingested::Phase(if same_nodes(&f.grid, &target) { PhaseSpaceFunction::new(target, f.values)? } else { f.resample(&target)? })
        }
    })
}

fn same_nodes(a: &GridSpec, b: &GridSpec) -> bool {
    a.axes.len() == b.axes.len() && a.axes.iter().zip(&b.axes).all(|(p, q)| p.nodes == q.nodes)
}

fn write_rows<W: Write>(grid: &GridSpec, values: &ArrayD<C64>, names: Vec<String>, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = names;
    header.extend(["re".to_string(), "im".to_string()]);
    out.write_record(&header).map_err(std::io::Error::other)?;
    for (idx, v) in values.indexed_iter() {
        let mut row: Vec<String> = grid.point(&idx).iter().map(|c| c.to_string()).collect();
        row.push(v.re.to_string());
        row.push(v.im.to_string());
        out.write_record(&row).map_err(std::io::Error::other)?;
    }
    out.flush()?;
    Ok(())
}

fn axis_names(prefix: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=n).map(|k| format!("{prefix}{k}")).collect()
    }
}

pub fn write_function_csv<W: Write>(f: &SampledFunction, w: W) -> Result<()> {
    write_rows(&f.grid, &f.values, axis_names("x", f.dim()), w)
}

pub fn write_phase_csv<W: Write>(f: &PhaseSpaceFunction, w: W) -> Result<()> {
    let n = f.n();
    let mut names = axis_names("x", n);
    names.extend(axis_names("u", n));
    write_rows(&f.grid, &f.values, names, w)
}

pub fn write_function_json<W: Write>(f: &SampledFunction, w: W) -> Result<()> {
    let j = JsonFunction {
        x: f.grid.axes.iter().map(|a| a.nodes.clone()).collect(),
        u: Vec::new(),
        re: f.values.iter().map(|v| v.re).collect(),
        im: f.values.iter().map(|v| v.im).collect(),
    };
    serde_json::to_writer(w, &j)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_csv(m: usize) -> (GridSpec, Vec<u8>) {
        let g = GridSpec::gauss_hermite(1, m, 1.0).unwrap();
        let f = SampledFunction::from_real_fn(&g, |x| (-0.5 * x[0] * x[0]).exp());
        let mut buf = Vec::new();
        write_function_csv(&f, &mut buf).unwrap();
        (g, buf)
    }

    #[test]
    fn csv_round_trip_onto_gauss_hermite_grid() {
        let (g, buf) = gaussian_csv(64);
        let path = std::env::temp_dir().join(format!("hkit-ingest-{}.csv", std::process::id()));
        std::fs::write(&path, &buf).unwrap();
        let f = ingest_function(&path, InputFormat::Csv, Some(64)).unwrap().into_line().unwrap();
        assert_eq!(f.grid, g);
        let exact = SampledFunction::from_real_fn(&g, |x| (-0.5 * x[0] * x[0]).exp());
        assert!(f.sub(&exact).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn uniform_data_is_resampled() {
        let g = GridSpec::uniform(1, -12.0, 12.0, 481).unwrap();
        let f = SampledFunction::from_real_fn(&g, |x| (-0.5 * x[0] * x[0]).exp());
        let mut buf = Vec::new();
        write_function_json(&f, &mut buf).unwrap();
        let raw = read_json(&buf[..]).unwrap().into_line().unwrap();
        let target = GridSpec::gauss_hermite(1, 32, 1.0).unwrap();
        let r = raw.resample(&target).unwrap();
        let exact = SampledFunction::from_real_fn(&target, |x| (-0.5 * x[0] * x[0]).exp());
        assert!(r.sub(&exact).unwrap().max_abs() < 1e-6);
    }

    #[test]
    fn missing_im_column() {
        let e = read_csv("x,re\n0,1\n1,2\n".as_bytes()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
    }

    #[test]
    fn bad_number_reports_its_line() {
        let e = read_csv("x,re,im\n0,1,0\n1,zz,0\n".as_bytes()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
    }

    #[test]
    fn non_monotone_axis() {
        let e = read_csv("x,re,im\n1,1,0\n0,1,0\n".as_bytes()).unwrap_err();
        assert!(matches!(e, Error::InvalidGrid(_)), "{e}");
    }

    #[test]
    fn json_phase_space() {
        let s = r#"{"x": [[-1, 0, 1]], "u": [[0, 1]], "re": [1, 2, 3, 4, 5, 6], "im": [0, 0, 0, 0, 0, 0]}"#;
        let f = read_json(s.as_bytes()).unwrap().into_phase().unwrap();
        assert_eq!(f.n(), 1);
        assert_eq!(f.values[[2, 1]], C64::new(6.0, 0.0));
    }

    #[test]
    fn phase_csv_round_trip() {
        let g = GridSpec::gauss_hermite(2, 6, 1.0).unwrap();
        let f = PhaseSpaceFunction::from_fn(&g, |x, u| C64::new(x[0], u[0]));
        let mut buf = Vec::new();
        write_phase_csv(&f, &mut buf).unwrap();
        let back = read_csv(&buf[..]).unwrap().into_phase().unwrap();
        assert_eq!(back.values, f.values);
    }
}
