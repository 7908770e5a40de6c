//! CSV and JSON files: radial `t,value`, spectral `lambda,re,im`, decay `r,theta`
//! with a JSON tail-law sidecar, and 17-digit JSON output.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::ingham::{TailDecl, ThetaProfile};
use crate::specfun::{plancherel_density, ComplexValue, JacobiParams};
use crate::transforms::{RadialProfile, SpectralProfile};

/// `x` with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes a header and rows of numbers.
pub fn write_table(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|v| fmt_f64(*v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a numeric table, checking the header.
pub fn read_table(path: &Path, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let found: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(Error::Parse(format!("{}: expected header {:?}, found {:?}", path.display(), header, found)));
    }
    r.records()
        .enumerate()
        .map(|(i, rec)| {
            rec?.iter()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Parse(format!("{}: row {}: {e}", path.display(), i + 2))))
                .collect()
        })
        .collect()
}

fn column(rows: &[Vec<f64>], k: usize) -> Vec<f64> {
    rows.iter().map(|r| r[k]).collect()
}

pub fn write_radial_csv(path: &Path, f: &RadialProfile) -> Result<()> {
    write_table(path, &["t", "value"], f.grid.iter().zip(&f.values).map(|(t, v)| vec![*t, *v]))
}

pub fn read_radial_csv(path: &Path, support_radius: Option<f64>) -> Result<RadialProfile> {
    let rows = read_table(path, &["t", "value"])?;
    RadialProfile::new(column(&rows, 0), column(&rows, 1), support_radius)
}

pub fn write_spectral_csv(path: &Path, f: &SpectralProfile) -> Result<()> {
    write_table(path, &["lambda", "re", "im"], f.lambdas.iter().zip(&f.values).map(|(l, v)| vec![*l, v.re, v.im]))
}

/// Reads `lambda,re,im` and attaches the Plancherel density of `params`.
pub fn read_spectral_csv(path: &Path, params: JacobiParams) -> Result<SpectralProfile> {
    let rows = read_table(path, &["lambda", "re", "im"])?;
    let lambdas = column(&rows, 0);
    let values = rows.iter().map(|r| ComplexValue::new(r[1], r[2])).collect();
    let density = lambdas.iter().map(|&l| plancherel_density(params, l)).collect::<Result<_>>()?;
    SpectralProfile::new(lambdas, values, density)
}

/// Sidecar path `name.json` next to `name.csv`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

/// Reads `r,theta` and the tail law declared in the sidecar.
pub fn read_theta_csv(path: &Path) -> Result<ThetaProfile> {
    let rows = read_table(path, &["r", "theta"])?;
    let side = sidecar_path(path);
    let decl: TailDecl = serde_json::from_reader(
        File::open(&side).map_err(|e| Error::Parse(format!("{}: tail-law sidecar missing ({e})", side.display())))?,
    )?;
    ThetaProfile::from_table(column(&rows, 0), column(&rows, 1), &decl.to_law()?)
}

/// Writes a θ table and its sidecar.
pub fn write_theta_csv(path: &Path, theta: &ThetaProfile, decl: &TailDecl) -> Result<()> {
    write_table(path, &["r", "theta"], theta.r.iter().zip(&theta.theta).map(|(r, t)| vec![*r, *t]))?;
    write_json(&sidecar_path(path), decl)
}

/// Pretty JSON whose floats carry 17 significant digits.
struct DigitsFormatter(PrettyFormatter<'static>);

macro_rules! forward {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(fn $name<W: ?Sized + Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> std::io::Result<()> {
            self.0.$name(w $(, $arg)*)
        })*
    };
}

impl Formatter for DigitsFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> std::io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(w, value as f64)
    }

    forward!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        end_object_key(),
        begin_object_value(),
        end_object_value(),
    );
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, DigitsFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_string(value)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_round_trip_is_lossless() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.csv");
        let f = RadialProfile::new(vec![0.0, 0.1, 0.2, 0.3], vec![1.0, 0.1f64.exp(), -1e-300, std::f64::consts::PI], Some(0.3))
            .unwrap();
        write_radial_csv(&p, &f).unwrap();
        let g = read_radial_csv(&p, Some(0.3)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn spectral_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.csv");
        let params = JacobiParams::hyperbolic(3).unwrap();
        let s = SpectralProfile::from_fn(params, &[0.0, 0.5, 1.0, 2.0], |l| ComplexValue::new(l.cos(), l.sin() / 3.0)).unwrap();
        write_spectral_csv(&p, &s).unwrap();
        assert_eq!(read_spectral_csv(&p, params).unwrap(), s);
    }

    #[test]
    fn wrong_header() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.csv");
        std::fs::write(&p, "x,y\n0,1\n").unwrap();
        assert!(matches!(read_radial_csv(&p, None), Err(Error::Parse(_))));
    }

    #[test]
    fn theta_with_sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("theta.csv");
        let theta = ThetaProfile::inverse_log(1e3).unwrap();
        write_theta_csv(&p, &theta, &TailDecl { kind: "log".into(), exponent: None }).unwrap();
        let back = read_theta_csv(&p).unwrap();
        assert_eq!(back.r, theta.r);
        assert_eq!(back.tail, theta.tail);
        std::fs::remove_file(sidecar_path(&p)).unwrap();
        assert!(read_theta_csv(&p).is_err());
    }

    #[test]
    fn json_floats_have_17_digits() {
        let s = to_json_string(&serde_json::json!({"x": 0.1, "y": [1.0, f64::NAN], "n": 3})).unwrap();
        assert!(s.contains("\"x\": 1.0000000000000001e-1"), "{s}");
        assert!(s.contains("null"));
        assert!(s.contains("\"n\": 3"));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["x"].as_f64(), Some(0.1));
    }
}
