//! The `mfkit/1` document format: JSON with a fixed schema and a canonical
//! byte form.

mod document;
mod raw;

pub use document::{canonicalize, parse_document, parse_document_unchecked, write_document, Document, Payload, SCHEMA_VERSION};
