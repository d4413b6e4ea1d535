//! Reader for the place/transition core of PNML: `place` elements with an
//! optional `initialMarking`, `transition` elements, and `arc` elements
//! with an optional integer `inscription` weight (default 1). High-level
//! and coloured nets are rejected.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Marking, PetriNet, Transition};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PnmlError {
    #[error("malformed XML: {0}")]
    Xml(String),
    #[error("unsupported net class: {0}")]
    UnsupportedNet(String),
    #[error("arc `{arc}` references unknown node `{node}`")]
    DanglingArc { arc: String, node: String },
    #[error("malformed net: {0}")]
    Malformed(String),
}

/// Markers of high-level (coloured) nets; their token game is not a plain
/// multiset rewrite, so they are rejected rather than misread.
const HIGH_LEVEL_TAGS: [&str; 5] = [
    "hlinitialMarking",
    "hlinscription",
    "declaration",
    "declarations",
    "hlannotation",
];

/// Parses the first net of a PNML document, returning it together with
/// its initial marking.
pub fn parse_pnml(xml: &str) -> Result<(PetriNet, Marking), PnmlError> {
    let doc = roxmltree::Document::parse(xml).map_err(|e| PnmlError::Xml(e.to_string()))?;
    let root = doc.root_element();

    let net = root
        .descendants()
        .find(|n| n.is_element() && n.tag_name().name() == "net")
        .ok_or_else(|| PnmlError::Malformed("no <net> element".into()))?;

    if let Some(ty) = net.attribute("type") {
        let lower = ty.to_ascii_lowercase();
        if lower.contains("highlevel") || lower.contains("symmetric") || lower.contains("hlpng")
        {
            return Err(PnmlError::UnsupportedNet(ty.to_string()));
        }
    }
    if let Some(tag) = net.descendants().find(|n| {
        n.is_element() && HIGH_LEVEL_TAGS.contains(&n.tag_name().name())
    }) {
        return Err(PnmlError::UnsupportedNet(format!(
            "high-level element <{}>",
            tag.tag_name().name()
        )));
    }

    let name = net
        .children()
        .find(|n| n.is_element() && n.tag_name().name() == "name")
        .and_then(|n| text_of(&n))
        .or_else(|| net.attribute("id").map(str::to_string))
        .unwrap_or_else(|| "net".to_string());

    let mut places: Vec<String> = Vec::new();
    let mut initial = Marking::new();
    let mut transition_ids: Vec<String> = Vec::new();

    for node in net.descendants().filter(|n| n.is_element()) {
        match node.tag_name().name() {
            "place" => {
                let id = required_id(&node)?;
                let tokens = match child_element(&node, "initialMarking") {
                    Some(marking) => number_of(&marking)?,
                    None => 0,
                };
                initial.insert_n(id.clone(), tokens);
                places.push(id);
            }
            "transition" => {
                transition_ids.push(required_id(&node)?);
            }
            _ => {}
        }
    }

    let mut presets: BTreeMap<String, Marking> = BTreeMap::new();
    let mut postsets: BTreeMap<String, Marking> = BTreeMap::new();
    for t in &transition_ids {
        presets.insert(t.clone(), Marking::new());
        postsets.insert(t.clone(), Marking::new());
    }

    for node in net
        .descendants()
        .filter(|n| n.is_element() && n.tag_name().name() == "arc")
    {
        let arc_id = node.attribute("id").unwrap_or("<unnamed>").to_string();
        let source = node
            .attribute("source")
            .ok_or_else(|| PnmlError::Malformed(format!("arc `{arc_id}` has no source")))?;
        let target = node
            .attribute("target")
            .ok_or_else(|| PnmlError::Malformed(format!("arc `{arc_id}` has no target")))?;
        let weight = match child_element(&node, "inscription") {
            Some(inscription) => number_of(&inscription)?,
            None => 1,
        };

        let src_place = places.iter().any(|p| p == source);
        let tgt_place = places.iter().any(|p| p == target);
        let src_trans = presets.contains_key(source);
        let tgt_trans = presets.contains_key(target);

        match (src_place, tgt_trans, src_trans, tgt_place) {
            // place -> transition: preset
            (true, true, _, _) => {
                presets
                    .get_mut(target)
                    .expect("checked")
                    .insert_n(source.to_string(), weight);
            }
            // transition -> place: postset
            (_, _, true, true) => {
                postsets
                    .get_mut(source)
                    .expect("checked")
                    .insert_n(target.to_string(), weight);
            }
            _ => {
                let node = if !src_place && !src_trans { source } else { target };
                return Err(PnmlError::DanglingArc {
                    arc: arc_id,
                    node: node.to_string(),
                });
            }
        }
    }

    let transitions: Vec<Transition> = transition_ids
        .into_iter()
        .map(|id| Transition {
            preset: presets.remove(&id).expect("inserted above"),
            postset: postsets.remove(&id).expect("inserted above"),
            id,
        })
        .collect();

    let net = PetriNet::new(name, places, transitions)
        .map_err(|e| PnmlError::Malformed(e.to_string()))?;
    Ok((net, initial))
}

fn required_id(node: &roxmltree::Node) -> Result<String, PnmlError> {
    node.attribute("id")
        .map(str::to_string)
        .ok_or_else(|| {
            PnmlError::Malformed(format!("<{}> without id", node.tag_name().name()))
        })
}

fn child_element<'a>(
    node: &roxmltree::Node<'a, 'a>,
    name: &str,
) -> Option<roxmltree::Node<'a, 'a>> {
    node.children()
        .find(|n| n.is_element() && n.tag_name().name() == name)
}

/// The numeric payload of an annotation: the content of its `<text>`
/// child (or direct text).
fn number_of(node: &roxmltree::Node) -> Result<u32, PnmlError> {
    let text = text_of(node)
        .ok_or_else(|| PnmlError::Malformed(format!("<{}> without text", node.tag_name().name())))?;
    text.trim()
        .parse::<u32>()
        .map_err(|_| PnmlError::Malformed(format!("`{text}` is not a token count")))
}

fn text_of(node: &roxmltree::Node) -> Option<String> {
    if let Some(text) = node
        .descendants()
        .find(|n| n.is_element() && n.tag_name().name() == "text")
    {
        return text.text().map(|s| s.trim().to_string());
    }
    node.text().map(|s| s.trim().to_string()).filter(|s| !s.is_empty())
}
