//! JSON file formats. Rationals are strings (`"-3/4"`, `"2"`); unknown keys
//! are rejected; output is pretty-printed and deterministic.

use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse_rational, Poly, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::spectral::SpectralSystem;
use crate::subdivision::{Mask, VecSeq};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MaskFile {
    d: usize,
    offset: i64,
    matrices: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeqFile {
    d: usize,
    offset: i64,
    vectors: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    d: usize,
    order: usize,
    polys: Vec<Vec<String>>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn rationals(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn mask_to_json(mask: &Mask) -> String {
    to_json(&MaskFile {
        d: mask.d(),
        offset: mask.offset(),
        matrices: mask
            .matrices()
            .iter()
            .map(|m| m.to_rows().iter().map(|r| strings(r)).collect())
            .collect(),
    })
}

pub fn mask_from_json(text: &str) -> Result<Mask> {
    let file: MaskFile = from_json(text)?;
    let matrices = file
        .matrices
        .iter()
        .map(|m| {
            RatMatrix::from_rows(m.iter().map(|r| rationals(r)).collect::<Result<_>>()?)
        })
        .collect::<Result<Vec<_>>>()?;
    Mask::new(file.d, file.offset, matrices)
}

pub fn seq_to_json(seq: &VecSeq) -> String {
    to_json(&SeqFile {
        d: seq.d(),
        offset: seq.offset(),
        vectors: seq.vectors().iter().map(|v| strings(v)).collect(),
    })
}

pub fn seq_from_json(text: &str) -> Result<VecSeq> {
    let file: SeqFile = from_json(text)?;
    let vectors = file.vectors.iter().map(|v| rationals(v)).collect::<Result<_>>()?;
    VecSeq::new(file.d, file.offset, vectors)
}

pub fn system_to_json(sys: &SpectralSystem) -> String {
    to_json(&SystemFile {
        d: sys.d(),
        order: sys.order(),
        polys: sys.polys().iter().map(|p| strings(p.coeffs())).collect(),
    })
}

pub fn system_from_json(text: &str) -> Result<SpectralSystem> {
    let file: SystemFile = from_json(text)?;
    if file.polys.len() != file.order + 1 {
        return Err(Error::Parse(format!(
            "order {} but {} polynomials",
            file.order,
            file.polys.len()
        )));
    }
    let polys = file
        .polys
        .iter()
        .map(|c| rationals(c).map(Poly::new))
        .collect::<Result<_>>()?;
    SpectralSystem::new(file.d, polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    const W: &str = r#"{
  "d": 1,
  "offset": 0,
  "matrices": [
    [
      [
        "1",
        "0"
      ],
      [
        "0",
        "1/2"
      ]
    ],
    [
      [
        "1",
        "1/2"
      ],
      [
        "0",
        "1/2"
      ]
    ]
  ]
}
"#;

    #[test]
    fn mask_round_trip() {
        let m = mask_from_json(W).unwrap();
        assert_eq!(m.get(1)[(0, 1)], rat(1, 2));
        assert_eq!(mask_to_json(&m), W);
        let compact = r#"{"d":1,"offset":-1,"matrices":[[["0","0"],["0","0"]],[["2/4","0"],["0","1"]]]}"#;
        let m = mask_from_json(compact).unwrap();
        assert_eq!(m.offset(), 0);
        assert_eq!(mask_from_json(&mask_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(mask_from_json(r#"{"d":1,"offset":0,"matrices":[],"extra":1}"#).is_err());
        assert!(mask_from_json(r#"{"d":1,"offset":0,"matrices":[[["1"]]]}"#).is_err());
        assert!(mask_from_json(r#"{"d":1,"offset":0,"matrices":[[["1","x"],["0","1"]]]}"#).is_err());
        assert!(mask_from_json(r#"{"d":1,"offset":0,"matrices":[[[1,0],[0,1]]]}"#).is_err());
        assert!(seq_from_json(r#"{"d":1,"offset":0}"#).is_err());
    }

    #[test]
    fn seq_round_trip() {
        let text = r#"{"d":1,"offset":-2,"vectors":[["1","0"],["-1/3","2"]]}"#;
        let s = seq_from_json(text).unwrap();
        assert_eq!(s.get(-1), vec![rat(-1, 3), int(2)]);
        assert_eq!(seq_from_json(&seq_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn system_round_trip() {
        let sys = SpectralSystem::monomial(2, 3);
        let text = system_to_json(&sys);
        assert_eq!(system_from_json(&text).unwrap(), sys);
        assert!(system_from_json(r#"{"d":1,"order":1,"polys":[["1"]]}"#).is_err());
        assert!(system_from_json(r#"{"d":1,"order":1,"polys":[["1"],["0","2"]]}"#).is_err());
    }
}
