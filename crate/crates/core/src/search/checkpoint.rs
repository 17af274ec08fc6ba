//! Binary checkpoints for long complement scans.
//!
//! Layout (little endian):
//!
//! ```text
//! header : b"FTCK" | version: u8 = 1 | n: u8
//! frame  : target: u8 | frontier: u64 | visited: u64 | count: u32 | survivors: [u64; count]
//! ```
//!
//! A frame records that the colex index range `[0, frontier)` of the
//! `target`-edge complements is done, with `visited` states counted so far
//! and the survivors found since the previous frame for that target.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::hypergraph::binom3;
use crate::search::enumerate::binomial;

pub const MAGIC: &[u8; 4] = b"FTCK";
pub const VERSION: u8 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub target: u8,
    pub frontier: u64,
    pub visited: u64,
    pub survivors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub n: u8,
    pub frames: Vec<Frame>,
}

/// Progress for one complement size, folded from its frames.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Progress {
    pub frontier: u64,
    pub visited: u64,
    pub survivors: Vec<u64>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Checkpoint(msg.into())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(k).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| bad(format!("truncated at byte {}", self.pos)))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn done(&self) -> bool {
        self.pos == self.bytes.len()
    }
}

impl Checkpoint {
    pub fn new(n: u8) -> Self {
        Checkpoint { n, frames: Vec::new() }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = encode_header(self.n);
        for f in &self.frames {
            out.extend(encode_frame(f));
        }
        out
    }

    /// Decodes and validates a checkpoint: frontiers never decrease or exceed
    /// the index space, visited counts match frontiers, and every survivor is
    /// a `target`-subset of the triples.
    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let mut c = Cursor { bytes, pos: 0 };
        if c.take(4)? != MAGIC {
            return Err(bad("bad magic"));
        }
        let version = c.u8()?;
        if version != VERSION {
            return Err(bad(format!("unsupported version {version}")));
        }
        let n = c.u8()?;
        if n > 8 {
            return Err(bad(format!("n = {n} exceeds 8")));
        }
        let items = binom3(n as usize);
        let mut last: BTreeMap<u8, u64> = BTreeMap::new();
        let mut frames = Vec::new();
        while !c.done() {
            let target = c.u8()?;
            if target as usize > items {
                return Err(bad(format!("target {target} exceeds C({n},3)")));
            }
            let frontier = c.u64()?;
            let visited = c.u64()?;
            let count = c.u32()? as usize;
            if count > (bytes.len() - c.pos) / 8 {
                return Err(bad("survivor count exceeds the remaining bytes"));
            }
            let space = binomial(items as u64, target as u64);
            if frontier > space || visited != frontier {
                return Err(bad(format!("frame for target {target} is inconsistent")));
            }
            let prev = last.insert(target, frontier).unwrap_or(0);
            if frontier < prev {
                return Err(bad(format!("frontier for target {target} moved backwards")));
            }
            let mut survivors = Vec::with_capacity(count);
            for _ in 0..count {
                let s = c.u64()?;
                if s.count_ones() != target as u32 || (items < 64 && s >> items != 0) {
                    return Err(bad(format!("survivor {s:#x} is not a {target}-subset")));
                }
                survivors.push(s);
            }
            frames.push(Frame { target, frontier, visited, survivors });
        }
        Ok(Checkpoint { n, frames })
    }

    pub fn progress(&self, target: u8) -> Progress {
        let mut p = Progress::default();
        for f in self.frames.iter().filter(|f| f.target == target) {
            p.frontier = f.frontier;
            p.visited = f.visited;
            p.survivors.extend(&f.survivors);
        }
        p
    }

    pub fn read(path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        File::open(path)?.read_to_end(&mut bytes)?;
        Self::decode(&bytes)
    }
}

fn encode_header(n: u8) -> Vec<u8> {
    let mut out = MAGIC.to_vec();
    out.push(VERSION);
    out.push(n);
    out
}

fn encode_frame(f: &Frame) -> Vec<u8> {
    let mut out = vec![f.target];
    out.extend(f.frontier.to_le_bytes());
    out.extend(f.visited.to_le_bytes());
    out.extend((f.survivors.len() as u32).to_le_bytes());
    for s in &f.survivors {
        out.extend(s.to_le_bytes());
    }
    out
}

/// Appends frames to a checkpoint file, creating it on first use.
pub struct CheckpointWriter {
    path: PathBuf,
    file: File,
}

impl CheckpointWriter {
    /// Opens `path` for appending, returning the frames already present.
    pub fn open(path: &Path, n: u8) -> Result<(Self, Checkpoint)> {
        let existing = if path.exists() {
            let ck = Checkpoint::read(path)?;
            if ck.n != n {
                return Err(bad(format!("checkpoint is for n = {}, not {n}", ck.n)));
            }
            ck
        } else {
            File::create(path)?.write_all(&encode_header(n))?;
            Checkpoint::new(n)
        };
        let file = OpenOptions::new().append(true).open(path)?;
        Ok((CheckpointWriter { path: path.to_path_buf(), file }, existing))
    }

    pub fn append(&mut self, frame: &Frame) -> Result<()> {
        self.file.write_all(&encode_frame(frame))?;
        self.file.sync_data()?;
        Ok(())
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Checkpoint {
        Checkpoint {
            n: 7,
            frames: vec![
                Frame { target: 5, frontier: 1000, visited: 1000, survivors: vec![0b11111] },
                Frame { target: 5, frontier: 324_632, visited: 324_632, survivors: vec![] },
                Frame { target: 4, frontier: 10, visited: 10, survivors: vec![0b1111 << 3] },
            ],
        }
    }

    #[test]
    fn roundtrip() {
        let ck = sample();
        let bytes = ck.encode();
        assert_eq!(&bytes[..6], b"FTCK\x01\x07");
        assert_eq!(Checkpoint::decode(&bytes).unwrap(), ck);
        let p = ck.progress(5);
        assert_eq!((p.frontier, p.survivors.len()), (324_632, 1));
    }

    #[test]
    fn rejects_corruption() {
        let bytes = sample().encode();
        for cut in 0..bytes.len() {
            if cut != 6 && Checkpoint::decode(&bytes[..cut]).is_ok() {
                // Only frame boundaries decode.
                let boundaries = [6, 6 + 29, 6 + 29 + 21];
                assert!(boundaries.contains(&cut), "cut at {cut}");
            }
        }
        let mut wrong = bytes.clone();
        wrong[4] = 2;
        assert!(Checkpoint::decode(&wrong).is_err());
        let mut backwards = sample();
        backwards.frames.swap(0, 1);
        assert!(Checkpoint::decode(&backwards.encode()).is_err());
        let mut bad_survivor = sample();
        bad_survivor.frames[0].survivors = vec![0b111];
        assert!(Checkpoint::decode(&bad_survivor.encode()).is_err());
    }

    #[test]
    fn writer_appends_and_resumes() {
        let dir = std::env::temp_dir().join(format!("ftck-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.ftck");
        let _ = std::fs::remove_file(&path);
        {
            let (mut w, existing) = CheckpointWriter::open(&path, 7).unwrap();
            assert!(existing.frames.is_empty());
            w.append(&sample().frames[0]).unwrap();
        }
        let (_, existing) = CheckpointWriter::open(&path, 7).unwrap();
        assert_eq!(existing.frames, vec![sample().frames[0].clone()]);
        assert!(CheckpointWriter::open(&path, 8).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
