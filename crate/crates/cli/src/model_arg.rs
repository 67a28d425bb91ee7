//! `--model` values: `uniform`, `uniform:B`, `asyb:P`, `markov:MU0,P00,P11`,
//! `markov:FILE` or a bare path to a JSON model document.

use std::path::Path;

use radix_select_core::MarkovModel;

#[derive(Debug, Clone)]
pub struct ModelArg {
    /// The string given on the command line.
    pub spec: String,
    pub model: MarkovModel,
}

pub fn parse_model(spec: &str) -> Result<ModelArg, String> {
    let model = match spec.split_once(':') {
        None if spec == "uniform" => MarkovModel::uniform(2).map_err(|e| e.to_string())?,
        Some(("uniform", b)) => {
            let b = b.parse().map_err(|_| format!("bad alphabet size `{b}`"))?;
            MarkovModel::uniform(b).map_err(|e| e.to_string())?
        }
        Some(("asyb", p)) => {
            let p = p.parse().map_err(|_| format!("bad probability `{p}`"))?;
            MarkovModel::bernoulli(p).map_err(|e| e.to_string())?
        }
        Some(("markov", rest)) => match parse_triple(rest) {
            Some([mu0, p00, p11]) => MarkovModel::binary(mu0, p00, p11).map_err(|e| e.to_string())?,
            None => load(Path::new(rest))?,
        },
        _ if Path::new(spec).is_file() => load(Path::new(spec))?,
        _ => {
            return Err(format!(
                "unknown model `{spec}` (expected uniform, uniform:B, asyb:P, markov:MU0,P00,P11, markov:FILE or a JSON file)"
            ))
        }
    };
    Ok(ModelArg {
        spec: spec.to_string(),
        model,
    })
}

fn parse_triple(s: &str) -> Option<[f64; 3]> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse().ok())
        .collect::<Option<_>>()?;
    parts.try_into().ok()
}

fn load(path: &Path) -> Result<MarkovModel, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    MarkovModel::from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}
