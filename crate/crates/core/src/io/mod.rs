//! Text formats and drawing output.

mod svg;
mod text;

pub use svg::{emit_two_layer_svg, LEFT_X, RADIUS, RIGHT_X, ROW_SPACING, TOP_MARGIN, WIDTH};
pub use text::{
    parse_document, parse_instance, parse_ordering, serialize_instance, serialize_instance_with_comments,
    serialize_ordering, InstanceDocument, ParseError,
};
