//! Decodes every PGM named by an oracle manifest with the rxing reader and
//! compares the text against the expected payload. Exit code 0 only on 100%
//! agreement.
//!
//! Usage: qrsl-oracle FIXTURE_DIR

use std::fs;
use std::path::{Path, PathBuf};

use rxing::{BarcodeFormat, DecodeHints};

fn read_pgm(path: &Path) -> Result<(Vec<u8>, u32, u32), String> {
    let data = fs::read(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    let mut pos = 0usize;
    let mut fields: Vec<String> = Vec::new();
    // magic, width, height, maxval; '#' comments allowed between fields
    while fields.len() < 4 {
        while pos < data.len() && (data[pos] as char).is_whitespace() {
            pos += 1;
        }
        if pos < data.len() && data[pos] == b'#' {
            while pos < data.len() && data[pos] != b'\n' {
                pos += 1;
            }
            continue;
        }
        let start = pos;
        while pos < data.len() && !(data[pos] as char).is_whitespace() {
            pos += 1;
        }
        fields.push(String::from_utf8_lossy(&data[start..pos]).to_string());
    }
    pos += 1; // single whitespace after maxval
    if fields[0] != "P5" || fields[3] != "255" {
        return Err(format!("{}: unsupported PGM header", path.display()));
    }
    let width: u32 = fields[1].parse().map_err(|_| "bad width".to_string())?;
    let height: u32 = fields[2].parse().map_err(|_| "bad height".to_string())?;
    let n = (width * height) as usize;
    if data.len() < pos + n {
        return Err(format!("{}: truncated pixels", path.display()));
    }
    Ok((data[pos..pos + n].to_vec(), width, height))
}

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| {
        eprintln!("usage: qrsl-oracle FIXTURE_DIR");
        std::process::exit(2);
    });
    let dir = PathBuf::from(dir);
    let manifest = fs::read_to_string(dir.join("manifest.jsonl")).expect("manifest.jsonl");

    let mut total = 0usize;
    let mut agreed = 0usize;
    for line in manifest.lines().filter(|l| !l.trim().is_empty()) {
        let case: serde_json::Value = serde_json::from_str(line).expect("manifest line");
        let id = case["id"].as_str().expect("id");
        let expected = case["payload"].as_str().expect("payload");
        total += 1;

        let (luma, w, h) = match read_pgm(&dir.join(format!("{id}.pgm"))) {
            Ok(v) => v,
            Err(e) => {
                println!("{id}: PGM error: {e}");
                continue;
            }
        };
        let mut hints = DecodeHints::default();
        hints.TryHarder = Some(true);
        hints.PureBarcode = Some(true);
        match rxing::helpers::detect_in_luma_with_hints(
            luma,
            w,
            h,
            Some(BarcodeFormat::MICRO_QR_CODE),
            &mut hints,
        ) {
            Ok(result) => {
                if result.getText() == expected {
                    agreed += 1;
                } else {
                    println!("{id}: MISMATCH: expected {expected:?}, got {:?}", result.getText());
                }
            }
            Err(e) => println!("{id}: reader failed: {e}"),
        }
    }
    println!("oracle agreement: {agreed}/{total}");
    if agreed != total {
        std::process::exit(1);
    }
}
