use nilclean::classifier::{
    min_nilpotent_index_over_decompositions, tower_element, Classifier, Property, PropertyReport,
    RingDescriptor,
};
use nilclean::decompose::{decompose_triangular, decompose_trunc_poly_matrix, decompose_zm};
use nilclean::frobenius::{rcf, verify_rcf, CompanionBlock, FieldPoly, RcfResult};
use nilclean::{CertCheck, Modulus, RingMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::doc::{
    grid_of, join_documents, matrix_of, split_documents, BaseRing, CertificateDocument, Fields,
    Grid, MatrixDocument, RcfDocument, CERT_SCHEMA, RCF_SCHEMA, REPORT_SCHEMA,
};
use crate::error::{CliError, CliResult};

/// Largest ring sweep `--exhaustive` accepts.
pub const EXHAUSTIVE_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Plain,
    Doc,
}

fn entry_text(c: &[u64]) -> String {
    let v: Vec<String> = c.iter().map(u64::to_string).collect();
    v.join(",")
}

fn grid_text(g: &Grid) -> String {
    let cells: Vec<Vec<String>> = g
        .iter()
        .map(|r| r.iter().map(|c| entry_text(c)).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| {
            let row: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
            format!("  {}\n", row.join(" "))
        })
        .collect()
}

pub fn decompose_matrix(doc: &MatrixDocument, triangular: bool) -> CliResult<CertificateDocument> {
    match &doc.ring {
        BaseRing::Zm(m) => {
            let a = matrix_of(m, &doc.a)?;
            let c = if triangular {
                decompose_triangular(&a)?
            } else {
                decompose_zm(&a)?
            };
            Ok(CertificateDocument::from_certificate(&c))
        }
        BaseRing::Trunc(r) => {
            if triangular {
                return Err(CliError::parse("--triangular needs a Z_m coefficient ring"));
            }
            let a = matrix_of(r, &doc.a)?;
            Ok(CertificateDocument::from_certificate(
                &decompose_trunc_poly_matrix(&a)?,
            ))
        }
    }
}

pub fn format_certificate(c: &CertificateDocument, format: Format) -> String {
    match format {
        Format::Doc => c.emit(),
        Format::Plain => {
            let tags: Vec<String> = c.case_tags.iter().map(|t| t.to_string()).collect();
            format!(
                "ring {}, n = {}\nA:\n{}E:\n{}F:\n{}W:\n{}nilpotency exponent: {}\ncase tags: {}\nverified: {}\n",
                c.ring,
                c.n,
                grid_text(&c.a),
                grid_text(&c.e),
                grid_text(&c.f),
                grid_text(&c.w),
                c.nilpotency_exponent,
                if tags.is_empty() { "-".to_string() } else { tags.join(" ") },
                c.verified
            )
        }
    }
}

fn join(outputs: Vec<String>, format: Format) -> String {
    match format {
        Format::Doc => join_documents(&outputs),
        Format::Plain => outputs.join("\n"),
    }
}

/// Every matrix of `M_n(Z_m)` in row-major mixed-radix order.
pub fn exhaustive_matrices(n: usize, m: u64) -> CliResult<Vec<MatrixDocument>> {
    let modulus = Modulus::new(m)?;
    let size = (m as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if size > EXHAUSTIVE_CAP {
        return Err(nilclean::Error::ResourceCap {
            size,
            cap: EXHAUSTIVE_CAP,
        }
        .into());
    }
    if n == 0 {
        return Err(CliError::parse("dimension must be positive"));
    }
    let ring = BaseRing::Zm(modulus);
    let mut out = Vec::with_capacity(size as usize);
    for idx in 0..size {
        let mut rest = idx;
        let mut flat = vec![0u64; n * n];
        for slot in flat.iter_mut().rev() {
            *slot = (rest % m as u128) as u64;
            rest /= m as u128;
        }
        let a = flat
            .chunks(n)
            .map(|r| r.iter().map(|&x| vec![x]).collect())
            .collect();
        out.push(MatrixDocument {
            ring: ring.clone(),
            a,
        });
    }
    Ok(out)
}

pub fn random_matrices(
    ring: &BaseRing,
    n: usize,
    count: usize,
    seed: u64,
) -> CliResult<Vec<MatrixDocument>> {
    if n == 0 || n > nilclean::matrix::MAX_DIM {
        return Err(CliError::parse(format!("dimension {n} out of range")));
    }
    let m = ring.modulus().value();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let a = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| (0..ring.width()).map(|_| rng.random_range(0..m)).collect())
                        .collect()
                })
                .collect();
            MatrixDocument {
                ring: ring.clone(),
                a,
            }
        })
        .collect())
}

pub fn decompose_all(
    inputs: &[MatrixDocument],
    triangular: bool,
    format: Format,
) -> CliResult<String> {
    let docs = inputs
        .iter()
        .map(|d| {
            Ok(format_certificate(
                &decompose_matrix(d, triangular)?,
                format,
            ))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(join(docs, format))
}

fn modulus_of(ring: &BaseRing) -> CliResult<&Modulus> {
    match ring {
        BaseRing::Zm(m) => Ok(m),
        BaseRing::Trunc(_) => Err(CliError::parse("this command needs a Z_m coefficient ring")),
    }
}

pub fn rcf_document(doc: &MatrixDocument) -> CliResult<RcfDocument> {
    let m = modulus_of(&doc.ring)?;
    let a = matrix_of(m, &doc.a)?;
    let r = rcf(&a)?;
    let verified = verify_rcf(&a, &r);
    if !verified {
        return Err(nilclean::Error::Internal("Frobenius form failed verification".into()).into());
    }
    Ok(RcfDocument {
        modulus: m.clone(),
        a: doc.a.clone(),
        blocks: r
            .blocks
            .iter()
            .map(|b| b.poly().coeffs().to_vec())
            .collect(),
        p: grid_of(&r.transform),
        p_inv: grid_of(&r.transform_inv),
        verified,
    })
}

pub fn format_rcf(d: &RcfDocument, format: Format) -> String {
    match format {
        Format::Doc => d.emit(),
        Format::Plain => {
            let p = d.modulus.value();
            let polys: Vec<String> = d
                .blocks
                .iter()
                .map(|c| {
                    let c: Vec<i64> = c.iter().map(|&x| x as i64).collect();
                    FieldPoly::new(p, &c).to_string()
                })
                .collect();
            format!(
                "ring {}, n = {}\nblocks: {}\nP:\n{}P_inv:\n{}verified: {}\n",
                d.modulus,
                d.a.len(),
                polys.join(" | "),
                grid_text(&d.p),
                grid_text(&d.p_inv),
                d.verified
            )
        }
    }
}

/// Names of the failed checks of one certificate document.
pub fn certificate_failures(doc: &CertificateDocument) -> CliResult<Vec<CertCheck>> {
    Ok(match &doc.ring {
        BaseRing::Zm(m) => doc.to_certificate(m)?.failed_checks(),
        BaseRing::Trunc(r) => doc.to_certificate(r)?.failed_checks(),
    })
}

fn rcf_failures(doc: &RcfDocument) -> CliResult<Vec<String>> {
    let p = doc.modulus.value();
    let m = &doc.modulus;
    let blocks = doc
        .blocks
        .iter()
        .map(|c| {
            let c: Vec<i64> = c.iter().map(|&x| x as i64).collect();
            CompanionBlock::new(FieldPoly::new(p, &c))
        })
        .collect::<Result<Vec<_>, _>>();
    let Ok(blocks) = blocks else {
        return Ok(vec!["companion shapes".into()]);
    };
    let r = RcfResult {
        blocks,
        transform: matrix_of(m, &doc.p)?,
        transform_inv: matrix_of(m, &doc.p_inv)?,
    };
    let a: RingMatrix = matrix_of(m, &doc.a)?;
    Ok(if verify_rcf(&a, &r) {
        Vec::new()
    } else {
        vec!["similarity".into()]
    })
}

pub fn verify_stream(text: &str) -> CliResult<String> {
    let docs = split_documents(text);
    if docs.is_empty() {
        return Err(CliError::parse("no document to verify"));
    }
    let mut lines = Vec::new();
    let mut failed_names: Vec<String> = Vec::new();
    for (i, d) in docs.iter().enumerate() {
        let schema = Fields::parse(d)?.require("schema")?.to_string();
        let failed: Vec<String> = match schema.as_str() {
            CERT_SCHEMA => certificate_failures(&CertificateDocument::parse(d)?)?
                .iter()
                .map(|c| c.name().to_string())
                .collect(),
            RCF_SCHEMA => rcf_failures(&RcfDocument::parse(d)?)?,
            s => return Err(CliError::parse(format!("unsupported schema {s:?}"))),
        };
        if failed.is_empty() {
            lines.push(format!("document {}: ok", i + 1));
        } else {
            lines.push(format!("document {}: FAIL: {}", i + 1, failed.join("; ")));
            for f in failed {
                if !failed_names.contains(&f) {
                    failed_names.push(f);
                }
            }
        }
    }
    let output = lines.join("\n") + "\n";
    if failed_names.is_empty() {
        Ok(output)
    } else {
        Err(CliError::Verification {
            output,
            failed: failed_names,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumerate {
    Idempotents,
    Nilpotents,
}

fn report_json(r: &RingDescriptor, rep: &PropertyReport, replayed: bool) -> Value {
    json!({
        "holds": rep.holds,
        "witnesses": rep.witnesses.len(),
        "counterexample": rep.counterexample.as_ref().map(|cx| {
            cx.iter().map(|a| r.format_elem(a)).collect::<Vec<_>>()
        }),
        "replayed": replayed,
    })
}

pub fn classify(
    ring: &str,
    properties: &[Property],
    enumerate: Option<Enumerate>,
    format: Format,
) -> CliResult<String> {
    let r: RingDescriptor = ring.parse()?;
    let c = Classifier::new(&r)?;
    let mut lines = Vec::new();
    if format == Format::Doc {
        lines.push(format!("schema: {REPORT_SCHEMA}"));
        lines.push(format!("ring: {r}"));
        lines.push(format!("size: {}", r.size()));
    }
    for &p in properties {
        let rep = c.check(p)?;
        let replayed = rep.replay(&r)?;
        if !replayed {
            return Err(nilclean::Error::Internal(format!("{p} report does not replay")).into());
        }
        lines.push(match format {
            Format::Doc => format!("{p}: {}", report_json(&r, &rep, replayed)),
            Format::Plain => match &rep.counterexample {
                None => format!("{p}: {}", rep.holds),
                Some(cx) => {
                    let v: Vec<String> = cx.iter().map(|a| r.format_elem(a)).collect();
                    format!("{p}: {} (counterexample {})", rep.holds, v.join(", "))
                }
            },
        });
    }
    match enumerate {
        Some(Enumerate::Idempotents) => {
            let v: Vec<String> = c.idempotents().iter().map(|a| r.format_elem(a)).collect();
            lines.push(match format {
                Format::Doc => format!("idempotents: {}", Value::from(v)),
                Format::Plain => format!("idempotents ({}): {}", v.len(), v.join(" ")),
            });
        }
        Some(Enumerate::Nilpotents) => {
            let v = c.nilpotents();
            lines.push(match format {
                Format::Doc => {
                    let items: Vec<Value> = v
                        .iter()
                        .map(|(a, k)| json!({"element": r.format_elem(a), "exponent": k}))
                        .collect();
                    format!("nilpotents: {}", Value::from(items))
                }
                Format::Plain => {
                    let items: Vec<String> = v
                        .iter()
                        .map(|(a, k)| format!("{}^{k}=0", r.format_elem(a)))
                        .collect();
                    format!("nilpotents ({}): {}", v.len(), items.join(" "))
                }
            });
        }
        None => {}
    }
    Ok(lines.join("\n") + "\n")
}

/// `(j, index for c = 2, index for c = 3)`.
pub type ObstructionRow = (u32, Option<u32>, Option<u32>);

/// Minimal nilpotency index over decompositions of `(0, c, ..., c)` in
/// `Z_2 x Z_4 x ... x Z_{2^j}` for `j = 2..=k`, for `c = 2` and `c = 3`.
pub fn obstruction_table(k: u32) -> CliResult<Vec<ObstructionRow>> {
    if !(2..=5).contains(&k) {
        return Err(CliError::parse(format!("k = {k} out of range 2..=5")));
    }
    (2..=k)
        .map(|j| {
            let (r, twos) = tower_element(j, 2)?;
            let (_, threes) = tower_element(j, 3)?;
            Ok((
                j,
                min_nilpotent_index_over_decompositions(&twos, &r)?,
                min_nilpotent_index_over_decompositions(&threes, &r)?,
            ))
        })
        .collect()
}

pub fn demo_obstruction(k: u32, format: Format) -> CliResult<String> {
    let rows = obstruction_table(k)?;
    let show = |x: Option<u32>| x.map_or("none".to_string(), |v| v.to_string());
    Ok(match format {
        Format::Plain => {
            let mut out = String::from(
                "minimal nilpotency index of w over a = e + f + w in Z2xZ4x...xZ(2^k)\n\
                 k  a=(0,2,...,2)  a=(0,3,...,3)\n",
            );
            for (j, twos, threes) in rows {
                out.push_str(&format!("{j:<2} {:<14} {}\n", show(twos), show(threes)));
            }
            out
        }
        Format::Doc => {
            let obj = |pick: fn(&ObstructionRow) -> Option<u32>| {
                let map: serde_json::Map<String, Value> = rows
                    .iter()
                    .map(|row| (row.0.to_string(), json!(pick(row))))
                    .collect();
                Value::Object(map)
            };
            format!(
                "schema: nilclean-demo/1\nk: {k}\nmin_index_twos: {}\nmin_index_threes: {}\n",
                obj(|r| r.1),
                obj(|r| r.2)
            )
        }
    })
}
