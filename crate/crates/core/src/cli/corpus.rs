//! Built-in presentation files.

use super::parse::{parse_presentation, PresentationFile};
use crate::Error;

pub const CORPUS: &[(&str, &str)] = &[
    ("GL11", include_str!("../../corpus/GL11.hopf")),
    ("Borel", include_str!("../../corpus/Borel.hopf")),
    ("Torus", include_str!("../../corpus/Torus.hopf")),
    ("Gm", include_str!("../../corpus/Gm.hopf")),
    ("Mu2", include_str!("../../corpus/Mu2.hopf")),
    ("Ga01", include_str!("../../corpus/Ga01.hopf")),
    ("Ga11", include_str!("../../corpus/Ga11.hopf")),
    ("GmSplit", include_str!("../../corpus/GmSplit.hopf")),
    ("GL2", include_str!("../../corpus/GL2.hopf")),
    ("GL2Borel", include_str!("../../corpus/GL2Borel.hopf")),
];

/// Parses one built-in file by its name.
pub fn corpus_file(name: &str) -> Result<PresentationFile, Error> {
    let (_, text) = CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Invalid(format!("no built-in file '{name}'")))?;
    parse_presentation(text)
}

/// First built-in file defining a hopf or sub block with this name.
pub fn find_block(name: &str) -> Result<PresentationFile, Error> {
    for (_, text) in CORPUS {
        let f = parse_presentation(text)?;
        if f.hopf(name).is_some() || f.sub(name).is_some() {
            return Ok(f);
        }
    }
    Err(Error::Invalid(format!("unknown name '{name}'")))
}

/// Builds a built-in hopf block over `field`.
pub fn load_hopf(name: &str, field: crate::superlinalg::Field) -> Result<crate::hopf::Hopf, Error> {
    let f = find_block(name)?;
    let block = f.hopf(name).ok_or_else(|| Error::Invalid(format!("'{name}' is not a hopf block")))?;
    super::build::build_hopf(block, field)
}

/// Parent Hopf algebra and ideal generators of a built-in sub block.
pub fn load_sub(name: &str, field: crate::superlinalg::Field) -> Result<(crate::hopf::Hopf, Vec<crate::superpoly::Poly>), Error> {
    let f = find_block(name)?;
    let sub = f.sub(name).ok_or_else(|| Error::Invalid(format!("'{name}' is not a sub block")))?;
    let block = f.hopf(&sub.parent).ok_or_else(|| Error::Invalid(format!("unknown parent '{}'", sub.parent)))?;
    let parent = super::build::build_hopf(block, field)?;
    let j = super::build::sub_ideal(&parent, sub)?;
    Ok((parent, j))
}
