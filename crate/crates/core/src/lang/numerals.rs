//! Dictionary mapping of Indic digits to ASCII digits.

/// First codepoint of each supported decimal-digit block. Each block holds
/// exactly ten digits in value order, so the ASCII digit is determined by the
/// offset: the nine Brahmi blocks (Devanagari through Malayalam), the two
/// Perso-Arabic digit rows used by Urdu/Sindhi/Kashmiri, Ol Chiki, and
/// Meetei Mayek.
const DIGIT_BLOCK_STARTS: [u32; 13] = [
    0x0966, // Devanagari
    0x09E6, // Bengali
    0x0A66, // Gurmukhi
    0x0AE6, // Gujarati
    0x0B66, // Oriya
    0x0BE6, // Tamil
    0x0C66, // Telugu
    0x0CE6, // Kannada
    0x0D66, // Malayalam
    0x0660, // Arabic-Indic
    0x06F0, // Extended Arabic-Indic
    0x1C50, // Ol Chiki
    0xABF0, // Meetei Mayek
];

/// Replaces every digit from a supported Indic block with its ASCII
/// equivalent; all other characters are unchanged. Length-preserving in
/// codepoints and idempotent.
pub fn map_numerals(text: &str) -> String {
    text.chars()
        .map(|ch| {
            let cp = ch as u32;
            for start in DIGIT_BLOCK_STARTS {
                if (start..start + 10).contains(&cp) {
                    return char::from(b'0' + (cp - start) as u8);
                }
            }
            ch
        })
        .collect()
}
