use catcluster::*;
use catcluster::roots::FiniteType;

fn main() {
    let d4 = FiniteType::D(4);
    let w = |t: &str| ReducedWord::parse(d4, t).unwrap();
    let i0 = w("312431243124");
    let targets = [
        ("i1", w("132413241324")),
        ("i2", w("123412341234")),
        ("i3", w("124312431243")),
        ("i'", w("132431432434")),
    ];
    let sources = [
        LusztigTuple(vec![1,0,0,0,0,0,0,0,1,0,0,0]),
        LusztigTuple(vec![0,1,1,1,0,0,0,0,0,1,1,1]),
    ];
    for src in &sources {
        for (name, tgt) in &targets {
            let out = transition_tuple(&i0, tgt, src, 1_000_000).unwrap();
            // path independence check: route through another word
            let mid = w("124312431243");
            let via = transition_tuple(&mid, tgt, &transition_tuple(&i0, &mid, src, 1_000_000).unwrap(), 1_000_000).unwrap();
            let back = transition_tuple(tgt, &i0, &out, 1_000_000).unwrap();
            println!("{src} ->{name}: {out}   (via-i3 agrees: {}, inverse ok: {})", via == out, back == *src);
        }
    }
}
