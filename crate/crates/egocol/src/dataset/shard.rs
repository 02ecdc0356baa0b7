//! Binary tensor shard format.
//!
//! A shard is a directory holding `manifest.json` and `data.bin`.
//!
//! `data.bin` layout (all integers little-endian):
//!
//! ```text
//! magic  b"CPLT"
//! version u32            (currently 1)
//! tensor records:
//!   dtype  u8            0 = f32, 1 = u8, 2 = bool
//!   ndim   u8
//!   dims   u32[ndim]
//!   payload               raw little-endian values (bool: one byte, 0/1)
//! ```
//!
//! The manifest echoes the dataset config and indexes every window: labels
//! plus, per tensor, the byte offset of its record in `data.bin`, the payload
//! length, and a CRC32C checksum of the payload bytes.

use super::{colliding_fraction, DatasetConfig, Window};
use crate::body::JOINT_COUNT;
use crate::error::{Error, Result};
use ndarray::{Array2, Array4, Array5, ArrayD, IxDyn};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;

pub const MAGIC: [u8; 4] = *b"CPLT";
pub const FORMAT_VERSION: u32 = 1;

const DTYPE_F32: u8 = 0;
const DTYPE_U8: u8 = 1;
const DTYPE_BOOL: u8 = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorEntry {
    pub offset: u64,
    pub byte_len: u64,
    pub crc32c: u32,
    pub dtype: String,
    pub shape: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowRecord {
    pub window_id: String,
    pub scene_id: String,
    pub y_col: bool,
    pub y_joint: Vec<bool>,
    pub tensors: BTreeMap<String, TensorEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShardStats {
    pub n_windows: usize,
    pub n_colliding: usize,
    pub colliding_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShardManifest {
    pub format_version: u32,
    pub config: DatasetConfig,
    pub stats: ShardStats,
    pub windows: Vec<WindowRecord>,
}

/// Raw tensor owned by a record, before interpretation.
enum RawTensor {
    F32(ArrayD<f32>),
    U8(ArrayD<u8>),
    Bool(ArrayD<bool>),
}

struct CountingWriter<W: Write> {
    inner: W,
    pos: u64,
}

impl<W: Write> CountingWriter<W> {
    fn write_all(&mut self, buf: &[u8]) -> std::io::Result<()> {
        self.inner.write_all(buf)?;
        self.pos += buf.len() as u64;
        Ok(())
    }
}

fn write_record<W: Write>(
    w: &mut CountingWriter<W>,
    dtype: u8,
    shape: &[usize],
    payload: &[u8],
) -> Result<TensorEntry> {
    let offset = w.pos;
    w.write_all(&[dtype, shape.len() as u8])?;
    for &d in shape {
        w.write_all(&(d as u32).to_le_bytes())?;
    }
    w.write_all(payload)?;
    Ok(TensorEntry {
        offset,
        byte_len: payload.len() as u64,
        crc32c: crc32c::crc32c(payload),
        dtype: match dtype {
            DTYPE_F32 => "f32",
            DTYPE_U8 => "u8",
            _ => "bool",
        }
        .to_string(),
        shape: shape.to_vec(),
    })
}

fn f32_payload(values: &[f32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(values.len() * 4);
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

fn bool_payload(values: &[bool]) -> Vec<u8> {
    values.iter().map(|&b| b as u8).collect()
}

/// Write windows to a shard directory. Returns the manifest.
pub fn write_shard(windows: &[Window], config: &DatasetConfig, path: &Path) -> Result<ShardManifest> {
    std::fs::create_dir_all(path)?;
    let file = File::create(path.join("data.bin"))?;
    let mut w = CountingWriter { inner: BufWriter::new(file), pos: 0 };
    w.write_all(&MAGIC)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;

    let mut records = Vec::with_capacity(windows.len());
    for win in windows {
        let mut tensors = BTreeMap::new();
        if let Some(rgb) = &win.rgb {
            let entry = write_record(
                &mut w,
                DTYPE_U8,
                rgb.shape(),
                rgb.as_slice().expect("contiguous"),
            )?;
            tensors.insert("rgb".to_string(), entry);
        }
        if let Some(depth) = &win.depth {
            let entry = write_record(
                &mut w,
                DTYPE_F32,
                depth.shape(),
                &f32_payload(depth.as_slice().expect("contiguous")),
            )?;
            tensors.insert("depth".to_string(), entry);
        }
        if let Some(maps) = &win.y_map {
            let entry = write_record(
                &mut w,
                DTYPE_F32,
                maps.shape(),
                &f32_payload(maps.as_slice().expect("contiguous")),
            )?;
            tensors.insert("y_map".to_string(), entry);
        }
        let entry = write_record(
            &mut w,
            DTYPE_BOOL,
            win.map_valid.shape(),
            &bool_payload(win.map_valid.as_slice().expect("contiguous")),
        )?;
        tensors.insert("map_valid".to_string(), entry);

        records.push(WindowRecord {
            window_id: win.window_id.clone(),
            scene_id: win.scene_id.clone(),
            y_col: win.y_col,
            y_joint: win.y_joint.to_vec(),
            tensors,
        });
    }
    w.inner.flush()?;

    let manifest = ShardManifest {
        format_version: FORMAT_VERSION,
        config: config.clone(),
        stats: ShardStats {
            n_windows: windows.len(),
            n_colliding: windows.iter().filter(|w| w.y_col).count(),
            colliding_fraction: colliding_fraction(windows),
        },
        windows: records,
    };
    let json = serde_json::to_string_pretty(&manifest)?;
    std::fs::write(path.join("manifest.json"), json)?;
    Ok(manifest)
}

fn read_exact_or_truncated(r: &mut impl Read, buf: &mut [u8], what: &str) -> Result<()> {
    r.read_exact(buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            Error::ShardTruncated(what.to_string())
        } else {
            Error::Io(e)
        }
    })
}

fn read_record(r: &mut (impl Read + Seek), entry: &TensorEntry, name: &str) -> Result<RawTensor> {
    r.seek(SeekFrom::Start(entry.offset))?;
    let mut head = [0u8; 2];
    read_exact_or_truncated(r, &mut head, name)?;
    let (dtype, ndim) = (head[0], head[1] as usize);
    let mut dims = vec![0usize; ndim];
    for d in dims.iter_mut() {
        let mut b = [0u8; 4];
        read_exact_or_truncated(r, &mut b, name)?;
        *d = u32::from_le_bytes(b) as usize;
    }
    if dims != entry.shape {
        return Err(Error::ShardFormat(format!(
            "tensor `{name}` shape {:?} does not match manifest {:?}",
            dims, entry.shape
        )));
    }
    let n: usize = dims.iter().product();
    let elem = match dtype {
        DTYPE_F32 => 4,
        DTYPE_U8 | DTYPE_BOOL => 1,
        other => return Err(Error::ShardFormat(format!("unknown dtype code {other}"))),
    };
    let mut payload = vec![0u8; n * elem];
    read_exact_or_truncated(r, &mut payload, name)?;
    if payload.len() as u64 != entry.byte_len {
        return Err(Error::ShardFormat(format!("tensor `{name}` length mismatch")));
    }
    if crc32c::crc32c(&payload) != entry.crc32c {
        return Err(Error::ShardChecksum { tensor: name.to_string() });
    }
    let shape = IxDyn(&dims);
    Ok(match dtype {
        DTYPE_F32 => {
            let vals: Vec<f32> = payload
                .chunks_exact(4)
                .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
                .collect();
            RawTensor::F32(ArrayD::from_shape_vec(shape, vals).expect("shape"))
        }
        DTYPE_U8 => RawTensor::U8(ArrayD::from_shape_vec(shape, payload).expect("shape")),
        _ => RawTensor::Bool(
            ArrayD::from_shape_vec(shape, payload.into_iter().map(|b| b != 0).collect())
                .expect("shape"),
        ),
    })
}

/// Read a shard back into memory. `load_rgb` / `load_depth` let callers skip
/// channel groups they do not need (the manifest is validated either way).
pub fn read_shard(path: &Path, load_rgb: bool, load_depth: bool) -> Result<(ShardManifest, Vec<Window>)> {
    let manifest: ShardManifest =
        serde_json::from_str(&std::fs::read_to_string(path.join("manifest.json"))?)?;
    if manifest.format_version != FORMAT_VERSION {
        return Err(Error::ShardVersion { found: manifest.format_version, expected: FORMAT_VERSION });
    }
    let file = File::open(path.join("data.bin"))?;
    let mut r = BufReader::new(file);
    let mut magic = [0u8; 4];
    read_exact_or_truncated(&mut r, &mut magic, "magic")?;
    if magic != MAGIC {
        return Err(Error::ShardFormat("bad magic".into()));
    }
    let mut vb = [0u8; 4];
    read_exact_or_truncated(&mut r, &mut vb, "version")?;
    let version = u32::from_le_bytes(vb);
    if version != FORMAT_VERSION {
        return Err(Error::ShardVersion { found: version, expected: FORMAT_VERSION });
    }

    let mut windows = Vec::with_capacity(manifest.windows.len());
    for rec in &manifest.windows {
        let mut rgb = None;
        let mut depth = None;
        let mut y_map = None;
        let mut map_valid = None;
        for (name, entry) in &rec.tensors {
            let skip = (name == "rgb" && !load_rgb) || (name == "depth" && !load_depth);
            if skip {
                continue;
            }
            let raw = read_record(&mut r, entry, name)?;
            match (name.as_str(), raw) {
                ("rgb", RawTensor::U8(a)) => {
                    rgb = Some(a.into_dimensionality::<ndarray::Ix5>().map_err(|_| {
                        Error::ShardFormat("rgb tensor is not 5-d".into())
                    })?)
                }
                ("depth", RawTensor::F32(a)) => {
                    depth = Some(a.into_dimensionality::<ndarray::Ix4>().map_err(|_| {
                        Error::ShardFormat("depth tensor is not 4-d".into())
                    })?)
                }
                ("y_map", RawTensor::F32(a)) => {
                    y_map = Some(a.into_dimensionality::<ndarray::Ix4>().map_err(|_| {
                        Error::ShardFormat("y_map tensor is not 4-d".into())
                    })?)
                }
                ("map_valid", RawTensor::Bool(a)) => {
                    map_valid = Some(a.into_dimensionality::<ndarray::Ix2>().map_err(|_| {
                        Error::ShardFormat("map_valid tensor is not 2-d".into())
                    })?)
                }
                (other, _) => {
                    return Err(Error::ShardFormat(format!(
                        "tensor `{other}` has unexpected dtype"
                    )))
                }
            }
        }
        let map_valid: Array2<bool> =
            map_valid.ok_or_else(|| Error::ShardFormat("missing map_valid".into()))?;
        let mut y_joint = [false; JOINT_COUNT];
        if rec.y_joint.len() != JOINT_COUNT {
            return Err(Error::ShardFormat("y_joint length".into()));
        }
        y_joint.copy_from_slice(&rec.y_joint);
        windows.push(Window {
            window_id: rec.window_id.clone(),
            scene_id: rec.scene_id.clone(),
            modality: manifest.config.modality,
            rgb: rgb.map(|a| a as Array5<u8>),
            depth: depth.map(|a| a as Array4<f32>),
            y_col: rec.y_col,
            y_joint,
            y_map: y_map.map(|a| a as Array4<f32>),
            map_valid,
        });
    }
    Ok((manifest, windows))
}
