//! Exact JSON documents and SVG rendering.

mod document;
mod svg;

pub use document::{parse, serialize, DocError, Document, LevelData, Metadata, Object, RationalWire, FORMAT_VERSION};
pub use svg::{render_svg, SVG_DECIMALS};
