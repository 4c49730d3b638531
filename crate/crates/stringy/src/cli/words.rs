//! Element references on the command line: generator words like `g*h^2`,
//! the identity `1`, or raw indices `#5`, resolved through the group table.

use crate::group::FiniteGroup;

use super::expr::ExprError;

/// Resolves a word over the generator labels to an element index.
pub fn parse_element_word(
    text: &str,
    group: &FiniteGroup,
    labels: &[String],
) -> Result<u32, ExprError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let err = |pos: usize, msg: &str| ExprError::Parse { pos, msg: msg.into() };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    let mut acc = 0u32;
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            if first {
                return Err(err(pos, "empty element word"));
            }
            break;
        }
        if !first {
            if bytes[pos] != b'*' {
                return Err(err(pos, "expected '*' between factors"));
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        first = false;

        let factor = if bytes.get(pos) == Some(&b'#') {
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(err(pos, "expected an element index after '#'"));
            }
            let idx: u32 = std::str::from_utf8(&bytes[start..pos])
                .unwrap()
                .parse()
                .map_err(|_| err(start, "element index too large"))?;
            if idx as usize >= group.order() {
                return Err(err(start, "element index out of range"));
            }
            idx
        } else if bytes.get(pos) == Some(&b'1')
            && !bytes
                .get(pos + 1)
                .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            pos += 1;
            0
        } else {
            let start = pos;
            while pos < bytes.len()
                && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
            {
                pos += 1;
            }
            if pos == start {
                return Err(err(pos, "expected a generator name"));
            }
            let name = std::str::from_utf8(&bytes[start..pos]).unwrap();
            let Some(gen_pos) = labels.iter().position(|l| l == name) else {
                return Err(err(start, "unknown generator name"));
            };
            group.generators()[gen_pos]
        };

        skip_ws(&mut pos);
        let power = if bytes.get(pos) == Some(&b'^') {
            pos += 1;
            skip_ws(&mut pos);
            let negative = bytes.get(pos) == Some(&b'-');
            if negative {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(err(pos, "expected an exponent"));
            }
            let mag: i64 = std::str::from_utf8(&bytes[start..pos])
                .unwrap()
                .parse()
                .map_err(|_| err(start, "exponent too large"))?;
            if negative {
                -mag
            } else {
                mag
            }
        } else {
            1
        };
        acc = group.mul(acc, group.pow(factor, power));
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
    }
    Ok(acc)
}

/// A comma-separated pair of element words.
pub fn parse_element_pair(
    text: &str,
    group: &FiniteGroup,
    labels: &[String],
) -> Result<(u32, u32), ExprError> {
    let mut parts = text.splitn(2, ',');
    let first = parts.next().unwrap_or("");
    let Some(second) = parts.next() else {
        return Err(ExprError::Parse {
            pos: text.len(),
            msg: "expected two comma-separated element words".into(),
        });
    };
    Ok((
        parse_element_word(first, group, labels)?,
        parse_element_word(second, group, labels)?,
    ))
}

/// Deterministic display names: the breadth-first word of each element, with
/// runs of one generator collapsed into powers.
pub fn element_names(group: &FiniteGroup, labels: &[String]) -> Vec<String> {
    (0..group.order() as u32)
        .map(|idx| {
            let word = group.word_of(idx);
            if word.is_empty() {
                return "1".to_string();
            }
            let mut pieces: Vec<String> = Vec::new();
            let mut run: Option<(u32, u32)> = None;
            let flush = |run: Option<(u32, u32)>, pieces: &mut Vec<String>| {
                if let Some((s, count)) = run {
                    let label = &labels[s as usize];
                    if count == 1 {
                        pieces.push(label.clone());
                    } else {
                        pieces.push(format!("{label}^{count}"));
                    }
                }
            };
            for s in word {
                run = match run {
                    Some((prev, count)) if prev == s => Some((prev, count + 1)),
                    other => {
                        flush(other, &mut pieces);
                        Some((s, 1))
                    }
                };
            }
            flush(run, &mut pieces);
            pieces.join("*")
        })
        .collect()
}
