//! The reversible byte <-> printable-character table used by byte-level BPE.
//!
//! Printable Latin-1 bytes map to themselves; the remaining 68 bytes (controls,
//! space, soft hyphen, ...) map to U+0100 upwards in byte order. Space becomes
//! 'Ġ' (U+0120) and newline 'Ċ' (U+010A).

use std::collections::HashMap;
use std::sync::OnceLock;

struct Tables {
    to_char: [char; 256],
    to_byte: HashMap<char, u8>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let printable = |b: u8| matches!(b, b'!'..=b'~' | 0xA1..=0xAC | 0xAE..=0xFF);
        let mut to_char = ['\0'; 256];
        let mut shifted = 0u32;
        for b in 0..=255u8 {
            to_char[b as usize] = if printable(b) {
                char::from(b)
            } else {
                let c = char::from_u32(256 + shifted).expect("valid scalar");
                shifted += 1;
                c
            };
        }
        let to_byte = to_char.iter().enumerate().map(|(b, &c)| (c, b as u8)).collect();
        Tables { to_char, to_byte }
    })
}

#[inline]
pub fn byte_to_char(b: u8) -> char {
    tables().to_char[b as usize]
}

#[inline]
pub fn char_to_byte(c: char) -> Option<u8> {
    tables().to_byte.get(&c).copied()
}

/// Maps every byte of `text` to its printable stand-in.
pub fn encode_bytes(text: &str) -> String {
    text.bytes().map(byte_to_char).collect()
}

/// Inverse of [`encode_bytes`]. Returns `None` if a character is outside the
/// byte alphabet.
pub fn decode_bytes(mapped: &str) -> Option<Vec<u8>> {
    mapped.chars().map(char_to_byte).collect()
}

/// All 256 alphabet characters in byte order.
pub fn alphabet() -> impl Iterator<Item = char> {
    (0..=255u8).map(byte_to_char)
}
