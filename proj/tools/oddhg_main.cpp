#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "oddhg/coloring.hpp"
#include "oddhg/hypergraph.hpp"
#include "oddhg/report.hpp"
#include "oddhg/spectral.hpp"
#include "oddhg/tensor.hpp"

using nlohmann::json;
using namespace oddhg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << bytes;
}

struct LoadedGraph {
  Hypergraph graph;
  std::string digest;
};

LoadedGraph load_graph(const std::string& path) {
  const std::string bytes = read_file(path);
  return {parse_hypergraph(bytes), content_digest(bytes)};
}

json vector_json(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(sig12(x));
  return arr;
}

json eigenreport(const std::string& matrix, const NqzResult& res) {
  json rep;
  rep["matrix"] = matrix;
  rep["rho"] = sig12(res.pair.lambda);
  rep["vector"] = vector_json(res.pair.x);
  rep["residual"] = sig12(res.pair.residual);
  rep["iterations"] = res.iterations;
  rep["bracket"] = {sig12(res.bracket_lo), sig12(res.bracket_hi)};
  rep["converged"] = res.converged;
  return rep;
}

/// Witness files are either a bare JSON array or an object holding the array
/// under `key` plus an optional input digest that must match.
std::vector<int> load_witness_array(const std::string& path, const std::string& key, const std::string& digest) {
  const json doc = json::parse(read_file(path));
  const json* arr = nullptr;
  if (doc.is_array()) {
    arr = &doc;
  } else if (doc.is_object() && doc.contains(key)) {
    arr = &doc.at(key);
    if (doc.contains("digest") && doc.at("digest").get<std::string>() != digest) {
      throw std::runtime_error("witness digest does not match the input graph");
    }
  } else {
    throw std::runtime_error("witness file must be an array or an object with '" + key + "'");
  }
  std::vector<int> out;
  for (const json& v : *arr) out.push_back(v.get<int>());
  return out;
}

DenseTensor load_dense_tensor(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  int order = 0, dim = 0;
  bool have_header = false;
  std::vector<Rat> entries;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      std::istringstream hs(line);
      if (!(hs >> order >> dim)) throw std::runtime_error("tensor file: malformed header");
      have_header = true;
      continue;
    }
    entries.push_back(Rat::parse(line));
  }
  if (!have_header) throw std::runtime_error("tensor file: missing header");
  DenseTensor t(order, dim);
  if (entries.size() != t.entries().size()) throw std::runtime_error("tensor file: wrong entry count");
  std::vector<int> idx(static_cast<size_t>(order), 1);
  for (size_t k = 0; k < entries.size(); ++k) {
    t.at(idx) = entries[k];
    int p = order - 1;
    while (p >= 0 && idx[static_cast<size_t>(p)] == dim) {
      idx[static_cast<size_t>(p)] = 1;
      --p;
    }
    if (p >= 0) ++idx[static_cast<size_t>(p)];
  }
  return t;
}

class Report {
 public:
  Report(std::string command, std::string digest)
      : start_(std::chrono::steady_clock::now()), command_(std::move(command)), digest_(std::move(digest)) {}

  void emit(const json& parameters, const json& payload) const {
    json doc;
    doc["tool"] = "oddhg";
    doc["version"] = kVersion;
    doc["command"] = command_;
    doc["input_digest"] = digest_;
    doc["parameters"] = parameters;
    doc["payload"] = payload;
    doc["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
    std::cout << doc.dump(2) << "\n";
  }

 private:
  std::chrono::steady_clock::time_point start_;
  std::string command_;
  std::string digest_;
};

int run_gen(int q, int t, int block_size, long long sample_cap, std::uint64_t seed, std::string out_path) {
  ConstructionParams params;
  params.q = q;
  params.t = t;
  if (block_size > 0) params.block_sizes.assign(static_cast<size_t>(1) << q, block_size);
  params.sample_cap = sample_cap;
  params.seed = seed;
  const Construction c = build_construction(params);

  if (out_path.empty()) out_path = "construction_q" + std::to_string(q) + "_t" + std::to_string(t) + ".hgr";
  const std::string hgr = serialize_hypergraph(c.graph);
  write_file(out_path, hgr);
  const std::string digest = content_digest(hgr);

  json sidecar;
  sidecar["digest"] = digest;
  sidecar["phi"] = c.coloring.phi;
  sidecar["blocks"] = c.blocks;
  const std::string sidecar_path = out_path + ".json";
  write_file(sidecar_path, sidecar.dump(2) + "\n");

  json b_table = json::array();
  for (const PairCoefficient& pc : c.b_table) b_table.push_back({{"i", pc.i}, {"j", pc.j}, {"b", pc.b}});
  json payload;
  payload["r"] = c.graph.r();
  payload["n"] = c.graph.n();
  payload["edge_count"] = c.graph.m();
  payload["b_table"] = b_table;
  payload["hgr_path"] = out_path;
  payload["sidecar_path"] = sidecar_path;

  Report report("gen", digest);
  report.emit({{"q", q}, {"t", t}, {"block_size", block_size}, {"sample_cap", sample_cap}, {"seed", seed}},
              payload);
  return kExitOk;
}

int run_color(const std::string& mode, const std::string& in_path, double budget_s) {
  const LoadedGraph input = load_graph(in_path);
  Report report("color " + mode, input.digest);
  json payload;
  payload["mode"] = mode;
  if (mode == "odd") {
    const auto c = find_odd_coloring(input.graph);
    payload["found"] = c.has_value();
    if (c) {
      payload["phi"] = c->phi;
      payload["digest"] = input.digest;
    } else {
      payload["result"] = "none";
    }
  } else if (mode == "bipartite") {
    const auto b = find_odd_bipartition(input.graph);
    payload["found"] = b.has_value();
    if (b) {
      payload["v1"] = b->part;
      payload["digest"] = input.digest;
    } else {
      payload["result"] = "none";
    }
  } else {  // chromatic
    const ChromaticResult res = chromatic_number(input.graph, budget_s);
    payload["exact"] = res.exact;
    payload["timed_out"] = res.timed_out;
    payload["bracket"] = {res.lower, res.upper};
    if (res.exact) payload["chi"] = res.upper;
    if (res.witness) payload["witness"] = res.witness->classes;
  }
  report.emit({{"in", in_path}, {"budget_s", budget_s}}, payload);
  return kExitOk;
}

int run_certify(const std::string& mode, const std::string& in_path, const std::string& coloring_path,
                const std::string& bipartition_path) {
  const LoadedGraph input = load_graph(in_path);
  Report report("certify " + mode, input.digest);
  json payload;
  payload["mode"] = mode;

  std::optional<SimilarityCertificate> cert;
  std::string witness_source;
  if (mode == "sign") {
    OddBipartition b;
    if (!bipartition_path.empty()) {
      b.part = load_witness_array(bipartition_path, "v1", input.digest);
      witness_source = "provided";
    } else {
      const auto found = find_odd_bipartition(input.graph);
      if (!found) {
        payload["certified"] = false;
        payload["reason"] = "no odd bipartition exists; certificate unavailable";
        report.emit({{"in", in_path}}, payload);
        return kExitOk;
      }
      b = *found;
      witness_source = "solved";
    }
    payload["v1"] = b.part;
    cert = sign_similarity(input.graph, b);
  } else {
    OddColoring c;
    if (!coloring_path.empty()) {
      c.phi = load_witness_array(coloring_path, "phi", input.digest);
      witness_source = "provided";
    } else {
      const auto found = find_odd_coloring(input.graph);
      if (!found) {
        payload["certified"] = false;
        payload["reason"] = "no odd-coloring exists; certificate unavailable";
        report.emit({{"in", in_path}}, payload);
        return kExitOk;
      }
      c = *found;
      witness_source = "solved";
    }
    payload["phi"] = c.phi;
    cert = mode == "symmetry" ? certify_spectrum_symmetry(input.graph, c) : certify_lq_similarity(input.graph, c);
  }
  payload["witness_source"] = witness_source;
  payload["certified"] = cert->certified;
  payload["exponent_violations"] = cert->exponent_violations;
  payload["similarity"] = cert->similarity.exponents;
  report.emit({{"in", in_path}, {"coloring", coloring_path}, {"bipartition", bipartition_path}}, payload);
  return kExitOk;
}

int run_radius(const std::string& in_path, const std::string& matrix, double tol, long long max_iter,
               bool per_component) {
  const LoadedGraph input = load_graph(in_path);
  const MatrixKind kind = matrix == "A" ? MatrixKind::kAdjacency : MatrixKind::kSignlessLaplacian;
  Report report("spectral radius", input.digest);
  NqzOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;

  if (per_component) {
    const RhoResult res = rho_by_components(input.graph, kind, tol);
    json payload;
    payload["matrix"] = matrix;
    payload["rho"] = sig12(res.rho);
    payload["per_component"] = vector_json(res.component_rhos);
    payload["converged"] = res.converged;
    report.emit({{"in", in_path}, {"matrix", matrix}, {"tol", tol}, {"per_component", true}}, payload);
    return res.converged ? kExitOk : kExitNoConvergence;
  }

  const HgTensor tensor =
      kind == MatrixKind::kAdjacency ? adjacency_tensor(input.graph) : signless_laplacian(input.graph);
  const NqzResult res = nqz_spectral_radius(tensor, opts);
  report.emit({{"in", in_path}, {"matrix", matrix}, {"tol", tol}, {"per_component", false}},
              eigenreport(matrix, res));
  return res.converged ? kExitOk : kExitNoConvergence;
}

int run_spectrum(const std::string& in_path, double cluster_tol, double sym_tol) {
  const std::string bytes = read_file(in_path);
  const DenseTensor t = load_dense_tensor(in_path);
  Report report("spectral spectrum", content_digest(bytes));
  const CharPoly cp = charpoly_dim2(t);
  const SpectrumMultiset spectrum = spectrum_dim2(t, cluster_tol);

  json coeffs = json::array();
  for (const Rat& c : cp.coeffs) coeffs.push_back(c.str());
  json roots = json::array();
  for (const auto& [root, mult] : spectrum.roots) {
    roots.push_back({{"re", sig12(root.real())}, {"im", sig12(root.imag())}, {"multiplicity", mult}});
  }
  json payload;
  payload["order"] = t.order();
  payload["dim"] = t.dim();
  payload["charpoly"] = coeffs;
  payload["roots"] = roots;
  payload["symmetric"] = is_symmetric_spectrum(spectrum, sym_tol);
  report.emit({{"in", in_path}, {"cluster_tol", cluster_tol}, {"tol", sym_tol}}, payload);
  return kExitOk;
}

int run_transport(const std::string& in_path, const std::string& bipartition_path, double tol) {
  const LoadedGraph input = load_graph(in_path);
  Report report("spectral transport", input.digest);

  OddBipartition b;
  if (!bipartition_path.empty()) {
    b.part = load_witness_array(bipartition_path, "v1", input.digest);
  } else {
    const auto found = find_odd_bipartition(input.graph);
    if (!found) throw std::invalid_argument("graph is not odd-bipartite; no sign similarity exists");
    b = *found;
  }
  const SimilarityCertificate cert = sign_similarity(input.graph, b);
  if (!cert.certified) throw std::logic_error("sign similarity failed to certify");

  const HgTensor q = signless_laplacian(input.graph);
  const HgTensor l = laplacian(input.graph);
  NqzOptions opts;
  opts.tol = tol;
  const NqzResult qres = nqz_spectral_radius(q, opts);
  const EigenPair lpair = transport_eigenpair(qres.pair, cert.similarity, q, l, 10 * tol);

  json payload;
  payload["lambda"] = sig12(lpair.lambda);
  payload["v1"] = b.part;
  payload["similarity"] = cert.similarity.exponents;
  payload["x_source"] = vector_json(qres.pair.x);
  payload["x_target"] = vector_json(lpair.x);
  payload["residual_source"] = sig12(qres.pair.residual);
  payload["residual_target"] = sig12(lpair.residual);
  payload["iterations"] = qres.iterations;
  report.emit({{"in", in_path}, {"bipartition", bipartition_path}, {"tol", tol}}, payload);
  return qres.converged ? kExitOk : kExitNoConvergence;
}

int run_components(const std::string& in_path) {
  const LoadedGraph input = load_graph(in_path);
  Report report("components", input.digest);
  const ComponentPartition parts = connected_components(input.graph);
  json blocks = json::array();
  for (const ComponentBlock& b : parts.blocks) blocks.push_back(b.vertices);
  json payload;
  payload["count"] = parts.blocks.size();
  payload["blocks"] = blocks;
  report.emit({{"in", in_path}}, payload);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"odd-colorability, chromatic numbers, and tensor spectra of uniform hypergraphs"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a block-family graph with its canonical odd-coloring");
  int q = 1, t = 0, block_size = 0;
  long long sample_cap = 0;
  std::uint64_t seed = 0;
  std::string gen_out;
  gen->add_option("--q", q, "power-of-two exponent of the uniformity")->required();
  gen->add_option("--t", t, "odd part parameter: r = 2^q (2t+1)");
  gen->add_option("--block-size", block_size, "size of every block (default: minimal r(2^q-1))");
  gen->add_option("--sample-cap", sample_cap, "max edges kept per block pair (0 = all)");
  gen->add_option("--seed", seed, "sampling seed");
  gen->add_option("--out", gen_out, "output HGR path");

  auto* color = app.add_subcommand("color", "odd-coloring, odd bipartition, or chromatic number");
  color->require_subcommand(1);
  std::string color_in;
  double budget_s = 60.0;
  auto* codd = color->add_subcommand("odd", "find an odd-coloring");
  auto* cbip = color->add_subcommand("bipartite", "find an odd bipartition");
  auto* cchrom = color->add_subcommand("chromatic", "exact weak chromatic number");
  for (CLI::App* sub : {codd, cbip, cchrom}) sub->add_option("--in", color_in, "input HGR file")->required();
  cchrom->add_option("--budget-s", budget_s, "search budget in seconds");

  auto* certify = app.add_subcommand("certify", "exact diagonal-similarity certificates");
  certify->require_subcommand(1);
  std::string cert_in, cert_coloring, cert_bipartition;
  auto* csym = certify->add_subcommand("symmetry", "spectrum symmetry of the adjacency tensor");
  auto* clq = certify->add_subcommand("lq", "Laplacian vs signless Laplacian spectra");
  auto* csign = certify->add_subcommand("sign", "+-1 similarity from an odd bipartition");
  for (CLI::App* sub : {csym, clq, csign}) {
    sub->add_option("--in", cert_in, "input HGR file")->required();
  }
  csym->add_option("--coloring", cert_coloring, "odd-coloring witness JSON");
  clq->add_option("--coloring", cert_coloring, "odd-coloring witness JSON");
  csign->add_option("--bipartition", cert_bipartition, "odd bipartition witness JSON");

  auto* spectral = app.add_subcommand("spectral", "numeric spectra");
  spectral->require_subcommand(1);
  std::string spec_in, matrix = "A", sp_bipartition;
  double tol = 1e-10, cluster_tol = 1e-7;
  long long max_iter = 100000;
  bool per_component = false;
  auto* radius = spectral->add_subcommand("radius", "spectral radius by power iteration");
  radius->add_option("--in", spec_in, "input HGR file")->required();
  radius->add_option("--matrix", matrix, "A or Q")->check(CLI::IsMember({"A", "Q"}));
  radius->add_option("--tol", tol, "bracket width tolerance");
  radius->add_option("--max-iter", max_iter, "iteration cap");
  radius->add_flag("--per-component", per_component, "run per connected component and take the max");
  auto* spectrum = spectral->add_subcommand("spectrum", "exact dimension-2 characteristic polynomial and roots");
  spectrum->add_option("--in", spec_in, "input tensor file")->required();
  spectrum->add_option("--cluster-tol", cluster_tol, "root clustering radius");
  spectrum->add_option("--tol", tol, "symmetry pairing tolerance");
  auto* transport = spectral->add_subcommand("transport", "move the Q Perron pair to L across a sign similarity");
  transport->add_option("--in", spec_in, "input HGR file")->required();
  transport->add_option("--bipartition", sp_bipartition, "odd bipartition witness JSON");
  transport->add_option("--tol", tol, "power iteration tolerance");

  auto* components = app.add_subcommand("components", "connected components");
  std::string comp_in;
  components->add_option("--in", comp_in, "input HGR file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(q, t, block_size, sample_cap, seed, gen_out);
    if (codd->parsed()) return run_color("odd", color_in, budget_s);
    if (cbip->parsed()) return run_color("bipartite", color_in, budget_s);
    if (cchrom->parsed()) return run_color("chromatic", color_in, budget_s);
    if (csym->parsed()) return run_certify("symmetry", cert_in, cert_coloring, cert_bipartition);
    if (clq->parsed()) return run_certify("lq", cert_in, cert_coloring, cert_bipartition);
    if (csign->parsed()) return run_certify("sign", cert_in, cert_coloring, cert_bipartition);
    if (radius->parsed()) return run_radius(spec_in, matrix, tol, max_iter, per_component);
    if (spectrum->parsed()) return run_spectrum(spec_in, cluster_tol, tol);
    if (transport->parsed()) return run_transport(spec_in, sp_bipartition, tol);
    if (components->parsed()) return run_components(comp_in);
  } catch (const NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cerr << "error: no subcommand selected\n";
  return kExitUsage;
}
