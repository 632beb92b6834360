#![allow(dead_code)]

use layoutsim_core::{ElementSnapshot, PageSnapshot, Position, Rect, Rgb, Rgba, StyleAttrs};
use rand::seq::SliceRandom;
use rand::Rng;
use std::path::PathBuf;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load_fixture(name: &str) -> PageSnapshot {
    layoutsim::parse_snapshot(&std::fs::read(fixture_path(name)).unwrap()).unwrap()
}

pub fn el(i: usize, tag: &str, l: f64, t: f64, w: f64, h: f64) -> ElementSnapshot {
    ElementSnapshot::new(i, tag, Rect::new(l, t, w, h))
}

pub fn page(els: Vec<ElementSnapshot>) -> PageSnapshot {
    PageSnapshot::new(1920.0, 1080.0, None, els).unwrap()
}

fn styled(color: (u8, u8, u8), bg: (u8, u8, u8, f64), font: f64, radius: f64) -> StyleAttrs {
    StyleAttrs {
        color: Rgb(color.0, color.1, color.2),
        background_color: Rgba::new(bg.0, bg.1, bg.2, bg.3),
        font_size: font,
        border_radius: radius,
        position: Position::Static,
        font_empty: false,
    }
}

/// Hand-built pages covering nesting, aligned lists, spanning elements and
/// single-element pages. Sizes range from 1 to 50 elements.
pub fn identity_fixtures() -> Vec<(&'static str, PageSnapshot)> {
    let mut out = Vec::new();

    out.push(("single", page(vec![el(0, "div", 10.0, 10.0, 100.0, 100.0)])));

    out.push((
        "spanning-hero",
        page(vec![
            el(0, "section", 0.0, 0.0, 1920.0, 1080.0),
            el(1, "h1", 560.0, 400.0, 800.0, 120.0).with_parent(0).with_text("Build faster"),
            el(2, "a", 860.0, 560.0, 200.0, 48.0)
                .with_parent(0)
                .with_classes(&["btn", "primary"])
                .with_text("Get started")
                .with_styles(styled((255, 255, 255), (37, 99, 235, 1.0), 18.0, 8.0)),
        ]),
    ));

    let mut nav = vec![el(0, "nav", 0.0, 0.0, 1920.0, 64.0).with_classes(&["topbar"])];
    for (k, label) in ["Home", "Docs", "Pricing", "Blog", "About"].iter().enumerate() {
        nav.push(
            el(k + 1, "a", 900.0 + 120.0 * k as f64, 20.0, 100.0, 24.0)
                .with_parent(0)
                .with_classes(&["nav-link"])
                .with_text(label),
        );
    }
    out.push(("nav-links", page(nav)));

    let mut list = vec![el(0, "ul", 100.0, 100.0, 600.0, 600.0).with_classes(&["feed"])];
    for k in 0..10 {
        list.push(
            el(k + 1, "li", 100.0, 100.0 + 60.0 * k as f64, 600.0, 50.0)
                .with_parent(0)
                .with_classes(&["item"])
                .with_text(&format!("Entry number {k}")),
        );
    }
    out.push(("vertical-list", page(list)));

    let mut grid = vec![el(0, "div", 0.0, 0.0, 1920.0, 1000.0).with_classes(&["grid"])];
    for r in 0..4 {
        for c in 0..4 {
            let i = grid.len();
            grid.push(
                el(i, "div", 100.0 + 440.0 * c as f64, 50.0 + 240.0 * r as f64, 400.0, 200.0)
                    .with_parent(0)
                    .with_classes(&["card"])
                    .with_styles(styled((20, 20, 20), (250, 250, 250, 1.0), 14.0, 12.0)),
            );
        }
    }
    out.push(("card-grid", page(grid)));

    let mut chain = Vec::new();
    for d in 0..8 {
        let inset = 20.0 * d as f64;
        let mut e = el(d, "div", inset, inset, 1000.0 - 2.0 * inset, 800.0 - 2.0 * inset);
        if d > 0 {
            e = e.with_parent(d - 1);
        }
        chain.push(e);
    }
    chain.push(el(8, "span", 200.0, 200.0, 80.0, 20.0).with_parent(7).with_text("deep"));
    out.push(("nested-chain", page(chain)));

    let mut form = vec![el(0, "form", 660.0, 200.0, 600.0, 500.0)];
    for (k, label) in ["Name", "Email", "Message"].iter().enumerate() {
        let top = 220.0 + 100.0 * k as f64;
        form.push(el(form.len(), "label", 680.0, top, 120.0, 20.0).with_parent(0).with_text(label));
        form.push(
            el(form.len(), "input", 680.0, top + 30.0, 560.0, 40.0)
                .with_parent(0)
                .with_styles(styled((0, 0, 0), (255, 255, 255, 1.0), 16.0, 4.0)),
        );
    }
    form.push(el(form.len(), "button", 680.0, 560.0, 160.0, 44.0).with_parent(0).with_text("Send"));
    out.push(("contact-form", page(form)));

    let mut table = vec![el(0, "table", 100.0, 100.0, 1200.0, 420.0)];
    for r in 0..6 {
        let row = table.len();
        table.push(el(row, "tr", 100.0, 100.0 + 70.0 * r as f64, 1200.0, 70.0).with_parent(0));
        for c in 0..3 {
            let tag = if r == 0 { "th" } else { "td" };
            table.push(
                el(table.len(), tag, 100.0 + 400.0 * c as f64, 100.0 + 70.0 * r as f64, 400.0, 70.0)
                    .with_parent(row)
                    .with_text(&format!("r{r}c{c}")),
            );
        }
    }
    out.push(("table", page(table)));

    // duplicate text and identical boxes
    out.push((
        "duplicates",
        page(vec![
            el(0, "p", 100.0, 100.0, 300.0, 20.0).with_text("Read more"),
            el(1, "p", 100.0, 100.0, 300.0, 20.0).with_text("Read more"),
            el(2, "img", 500.0, 100.0, 64.0, 64.0),
            el(3, "img", 500.0, 100.0, 64.0, 64.0),
        ]),
    ));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    out.push(("random-50", random_page(&mut rng, 50)));

    let mut footer = vec![el(0, "footer", 0.0, 900.0, 1920.0, 180.0)];
    for k in 0..4 {
        let col = footer.len();
        footer.push(el(col, "div", 200.0 + 400.0 * k as f64, 920.0, 300.0, 140.0).with_parent(0).with_classes(&["col"]));
        for j in 0..3 {
            footer.push(
                el(footer.len(), "a", 200.0 + 400.0 * k as f64, 930.0 + 40.0 * j as f64, 200.0, 20.0)
                    .with_parent(col)
                    .with_text(&format!("Link {k}.{j}")),
            );
        }
    }
    out.push(("footer-columns", page(footer)));

    out
}

use rand::SeedableRng;

const TAGS: [&str; 5] = ["div", "li", "a", "p", "img"];
const CLASSES: [&str; 4] = ["item", "card", "nav", "active"];
const WORDS: [&str; 6] = ["home", "about", "contact", "blog", "news", "shop"];

/// A random valid page. Coordinates sit on a coarse grid so that elements
/// frequently share alignment axes.
pub fn random_page<R: Rng>(rng: &mut R, n: usize) -> PageSnapshot {
    let els = (0..n)
        .map(|i| {
            let l = 40.0 * rng.gen_range(0..40) as f64;
            let t = 40.0 * rng.gen_range(0..40) as f64;
            let w = 20.0 * rng.gen_range(1..30) as f64;
            let h = 20.0 * rng.gen_range(1..20) as f64;
            let mut e = el(i, TAGS.choose(rng).unwrap(), l, t, w, h);
            let k = rng.gen_range(0..3);
            let classes: Vec<&str> = CLASSES.choose_multiple(rng, k).copied().collect();
            e = e.with_classes(&classes);
            if rng.gen_bool(0.5) {
                e = e.with_text(WORDS.choose(rng).unwrap());
            }
            if i > 0 && rng.gen_bool(0.6) {
                e = e.with_parent(rng.gen_range(0..i));
            }
            e.styles = styled(
                (rng.gen(), rng.gen(), rng.gen()),
                (rng.gen(), rng.gen(), rng.gen(), rng.gen_range(0.0..=1.0)),
                rng.gen_range(8.0..40.0),
                rng.gen_range(0.0..20.0),
            );
            e
        })
        .collect();
    PageSnapshot::new(1920.0, 1800.0, None, els).unwrap()
}
