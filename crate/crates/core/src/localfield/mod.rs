//! Tame local fields in coordinates, the tame symbol, and the character
//! model of splitting fields.

mod characters;
mod tame;

pub use characters::{character_index, character_index_by_scan, lang_tate_index, CharacterTuple, LangTateModel};
pub use tame::{
    delta_symbols, prop28_search, quadratic_symbol_sum, reduce, tame_symbol, tuples, TameLocalModel, UnitClass,
    MAX_PRIME,
};
