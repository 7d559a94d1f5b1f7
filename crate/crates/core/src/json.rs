//! Parsing of the JSON interchange formats; every error names the offending path.

use serde_json::Value;

use crate::error::{AlgebraError, Result};
use crate::factorization::{fac_validate, Factorization};
use crate::field_poly::{Field, Polynomial, Scalar};
use crate::hypersurface_module::{HypersurfaceConfig, ModuleMap, RModule};
use crate::linalg::FieldMatrix;
use crate::monochain::MonoChain;
use crate::polymat::{GradedMatrix, PolyMatrix};

fn err(path: &str, what: impl std::fmt::Display) -> AlgebraError {
    AlgebraError::Parse(format!("{path}: {what}"))
}

fn field_at<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(path, format!("missing field `{key}`")))
}

fn array_at<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn usize_at(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| err(path, "expected a nonnegative integer"))
}

fn degs_at(v: &Value, path: &str) -> Result<Vec<i64>> {
    array_at(v, path)?
        .iter()
        .enumerate()
        .map(|(i, n)| n.as_i64().ok_or_else(|| err(&format!("{path}[{i}]"), "expected an integer")))
        .collect()
}

/// `{"rows", "cols", "entries": [[coeffs, …], …]}`; degree vectors are ignored.
pub fn poly_matrix_from_json(field: Field, v: &Value, path: &str) -> Result<PolyMatrix> {
    let rows = usize_at(field_at(v, path, "rows")?, &format!("{path}.rows"))?;
    let cols = usize_at(field_at(v, path, "cols")?, &format!("{path}.cols"))?;
    let entries = array_at(field_at(v, path, "entries")?, &format!("{path}.entries"))?;
    if entries.len() != rows {
        return Err(err(&format!("{path}.entries"), format!("{} rows, expected {rows}", entries.len())));
    }
    let mut parsed = Vec::with_capacity(rows);
    for (i, row) in entries.iter().enumerate() {
        let rp = format!("{path}.entries[{i}]");
        let row = array_at(row, &rp)?;
        if row.len() != cols {
            return Err(err(&rp, format!("{} entries, expected {cols}", row.len())));
        }
        let polys = row
            .iter()
            .enumerate()
            .map(|(j, p)| Polynomial::from_json(field, p).map_err(|e| err(&format!("{rp}[{j}]"), e)))
            .collect::<Result<Vec<_>>>()?;
        parsed.push(polys);
    }
    PolyMatrix::from_rows(field, parsed, cols).map_err(|e| err(path, e))
}

/// A matrix with both `src_degs` and `tgt_degs`.
pub fn graded_matrix_from_json(field: Field, v: &Value, path: &str) -> Result<GradedMatrix> {
    let mat = poly_matrix_from_json(field, v, path)?;
    let src = degs_at(field_at(v, path, "src_degs")?, &format!("{path}.src_degs"))?;
    let tgt = degs_at(field_at(v, path, "tgt_degs")?, &format!("{path}.tgt_degs"))?;
    GradedMatrix::new(mat, src, tgt).map_err(|e| err(path, e))
}

/// `{"d": d, "summands": [[e, s], …]}`.
pub fn module_from_json(field: Field, v: &Value, path: &str) -> Result<RModule> {
    let d = usize_at(field_at(v, path, "d")?, &format!("{path}.d"))?;
    let cfg = HypersurfaceConfig::new(d, field).map_err(|e| err(&format!("{path}.d"), e))?;
    let summands = array_at(field_at(v, path, "summands")?, &format!("{path}.summands"))?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let sp = format!("{path}.summands[{i}]");
            match degs_at(s, &sp)?.as_slice() {
                &[e, s] if e >= 1 => Ok((e as usize, s)),
                _ => Err(err(&sp, "expected [e, s] with e >= 1")),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    RModule::new(cfg, summands).map_err(|e| err(path, e))
}

/// `{"src": RModule, "tgt": RModule, "blocks": [[c, …], …]}`.
pub fn module_map_from_json(field: Field, v: &Value, path: &str) -> Result<ModuleMap> {
    let src = module_from_json(field, field_at(v, path, "src")?, &format!("{path}.src"))?;
    let tgt = module_from_json(field, field_at(v, path, "tgt")?, &format!("{path}.tgt"))?;
    let bp = format!("{path}.blocks");
    let rows = array_at(field_at(v, path, "blocks")?, &bp)?;
    if rows.len() != tgt.num_summands() {
        return Err(err(&bp, format!("{} rows, expected {}", rows.len(), tgt.num_summands())));
    }
    let mut blocks = FieldMatrix::zeros(field, tgt.num_summands(), src.num_summands());
    for (u, row) in rows.iter().enumerate() {
        let rp = format!("{bp}[{u}]");
        let row = array_at(row, &rp)?;
        if row.len() != src.num_summands() {
            return Err(err(&rp, format!("{} entries, expected {}", row.len(), src.num_summands())));
        }
        for (t, c) in row.iter().enumerate() {
            blocks.set(u, t, Scalar::from_json(field, c).map_err(|e| err(&format!("{rp}[{t}]"), e))?);
        }
    }
    ModuleMap::new(src, tgt, blocks).map_err(|e| err(path, e))
}

/// `{"objects": [RModule, …], "maps": [ModuleMap, …]}`.
pub fn chain_from_json(field: Field, v: &Value) -> Result<MonoChain> {
    let objects = array_at(field_at(v, "$", "objects")?, "$.objects")?
        .iter()
        .enumerate()
        .map(|(k, o)| module_from_json(field, o, &format!("$.objects[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    let maps = array_at(field_at(v, "$", "maps")?, "$.maps")?
        .iter()
        .enumerate()
        .map(|(k, f)| module_map_from_json(field, f, &format!("$.maps[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    MonoChain::new(objects, maps)
}

/// `{"d", "l", "m", "degs", "maps"}` with optional `closing` (checked when present),
/// `twist` and `phase`.
pub fn factorization_from_json(field: Field, v: &Value) -> Result<Factorization> {
    let d = usize_at(field_at(v, "$", "d")?, "$.d")?;
    let cfg = HypersurfaceConfig::new(d, field).map_err(|e| err("$.d", e))?;
    let degs = array_at(field_at(v, "$", "degs")?, "$.degs")?
        .iter()
        .enumerate()
        .map(|(k, dv)| degs_at(dv, &format!("$.degs[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    let maps = array_at(field_at(v, "$", "maps")?, "$.maps")?
        .iter()
        .enumerate()
        .map(|(k, a)| poly_matrix_from_json(field, a, &format!("$.maps[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    if let Some(l) = v.get("l") {
        if usize_at(l, "$.l")? != maps.len() {
            return Err(err("$.l", format!("l = {l} but {} maps are given", maps.len())));
        }
    }
    if let Some(m) = v.get("m") {
        if degs.first().is_some_and(|v0| usize_at(m, "$.m").ok() != Some(v0.len())) {
            return Err(err("$.m", "rank differs from the length of the degree vectors"));
        }
    }
    let x = fac_validate(&maps, &degs, cfg)?;
    if let Some(c) = v.get("closing") {
        let given = poly_matrix_from_json(field, c, "$.closing")?;
        if &given != x.base_closing().mat() {
            return Err(err("$.closing", "does not match the closing map forced by the other maps"));
        }
    }
    let twist = match v.get("twist") {
        Some(t) => t.as_i64().ok_or_else(|| err("$.twist", "expected an integer"))?,
        None => 0,
    };
    let phase = match v.get("phase") {
        Some(p) => usize_at(p, "$.phase")?,
        None => 0,
    };
    x.with_twist_phase(twist, phase).map_err(|e| err("$.phase", e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{nu, rotate};
    use crate::hypersurface_module::map_ker_cok_im;

    fn cfg() -> HypersurfaceConfig {
        HypersurfaceConfig::new(3, Field::Prime(5)).unwrap()
    }

    #[test]
    fn factorization_round_trip() {
        let x = nu(cfg(), &[0, -1], 1, 2).unwrap();
        let spun = rotate(&rotate(&rotate(&x, false), false), false);
        for y in [x, spun] {
            let back = factorization_from_json(Field::Prime(5), &y.to_json()).unwrap();
            assert_eq!(back, y);
        }
    }

    #[test]
    fn reports_paths() {
        let mut v = nu(cfg(), &[0], 0, 1).unwrap().to_json();
        v["maps"][0]["entries"][0][0] = serde_json::json!("a");
        let e = factorization_from_json(Field::Prime(5), &v).unwrap_err().to_string();
        assert!(e.contains("$.maps[0].entries[0][0]"), "{e}");
        let mut v = nu(cfg(), &[0], 0, 1).unwrap().to_json();
        v["degs"][1] = serde_json::json!([1]);
        let e = factorization_from_json(Field::Prime(5), &v).unwrap_err().to_string();
        assert!(e.contains("not homogeneous"), "{e}");
        let e = factorization_from_json(Field::Prime(5), &serde_json::json!({"d": 2})).unwrap_err().to_string();
        assert!(e.contains("missing field `degs`"), "{e}");
    }

    #[test]
    fn chain_round_trip() {
        let c = cfg();
        let top = RModule::new(c, vec![(3, 0), (1, 1)]).unwrap();
        let inc = map_ker_cok_im(&ModuleMap::identity(&top)).im_inclusion;
        let u = MonoChain::new(vec![inc.src().clone(), top], vec![inc]).unwrap();
        let back = chain_from_json(Field::Prime(5), &u.to_json()).unwrap();
        assert_eq!(back.to_json(), u.to_json());
    }
}
