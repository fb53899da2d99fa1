// gfrisk: command-line front end for the spectral risk library.
//
// Every subcommand is deterministic given its flags and seed; reruns write
// byte-identical files. Numeric text uses 17 significant digits so CSV
// output round-trips through double parsing losslessly.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gfrisk/filters.hpp"
#include "gfrisk/graph.hpp"
#include "gfrisk/oracle.hpp"
#include "gfrisk/risk.hpp"
#include "gfrisk/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace gfrisk;

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    int count = 2;

    std::vector<double> linear() const {
        std::vector<double> v(count);
        for (int i = 0; i < count; ++i)
            v[i] = start + (stop - start) * i / (count - 1);
        return v;
    }
    std::vector<double> geometric() const {
        std::vector<double> v(count);
        const double ratio = std::log(stop / start);
        for (int i = 0; i < count; ++i)
            v[i] = start * std::exp(ratio * i / (count - 1));
        return v;
    }
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text);
    if (!(in >> g.start >> colon1 >> g.stop >> colon2 >> g.count) ||
        colon1 != ':' || colon2 != ':' || !in.eof())
        throw CLI::ValidationError("grid", "expected start:stop:count, got '" +
                                               text + "'");
    if (g.count < 2)
        throw CLI::ValidationError("grid", "count must be >= 2");
    return g;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, sep)) out.push_back(tok);
    return out;
}

// --- model parsing --------------------------------------------------------

const char* kModelHelp =
    "mlp, gcn, gin[:eps=E], ppnp[:alpha=A], gprgnn[:alpha=A,K=N], highpass, "
    "highlow, fagcn[:alpha=A,eps=E], sage, cayleynet[:h=H,r=R], "
    "chebnet[:K=N], chebnet2[:K=N]; any model also accepts layers=L";

FilterSpec parse_model(const std::string& token) {
    auto parts = split(token, ':');
    const std::string& name = parts[0];
    std::map<std::string, double> kv;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        for (const auto& pair : split(parts[i], ',')) {
            auto eq = pair.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError(
                    "models", "expected key=value in '" + token + "'");
            kv[pair.substr(0, eq)] = std::stod(pair.substr(eq + 1));
        }
    }
    auto take = [&kv](const std::string& key, double fallback) {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        double v = it->second;
        kv.erase(it);
        return v;
    };

    int layers = static_cast<int>(take("layers", 1.0));
    FilterSpec spec;
    if (name == "mlp") spec = FilterSpec::mlp();
    else if (name == "gcn") spec = FilterSpec::gcn();
    else if (name == "gin") spec = FilterSpec::gin(take("eps", 0.0));
    else if (name == "ppnp") spec = FilterSpec::ppnp(take("alpha", 0.1));
    else if (name == "gprgnn")
        spec = FilterSpec::gprgnn_ppr(take("alpha", 0.2),
                                      static_cast<int>(take("K", 10.0)));
    else if (name == "highpass") spec = FilterSpec::highpass();
    else if (name == "highlow") spec = FilterSpec::highlow();
    else if (name == "fagcn")
        spec = FilterSpec::fagcn(take("alpha", 0.5), take("eps", 0.2));
    else if (name == "sage") spec = FilterSpec::sage();
    else if (name == "cayleynet")
        spec = FilterSpec::cayleynet(take("h", 1.0),
                                     static_cast<int>(take("r", 3.0)));
    else if (name == "chebnet")
        spec = FilterSpec::chebnet(static_cast<int>(take("K", 6.0)));
    else if (name == "chebnet2")
        spec = FilterSpec::chebnet2(static_cast<int>(take("K", 6.0)));
    else
        throw CLI::ValidationError("models", "unknown model '" + name +
                                                 "'; available: " + kModelHelp);
    if (!kv.empty())
        throw CLI::ValidationError(
            "models", "unknown parameter '" + kv.begin()->first + "' for " +
                          name);
    return spec.with_layers(layers);
}

// Model lists are comma separated, but hyperparameter lists also use commas
// ("gprgnn:alpha=0.2,K=10"). Tokens that carry '=' but no model name glue
// onto the previous token.
std::vector<FilterSpec> parse_model_list(const std::string& list) {
    std::vector<std::string> tokens;
    for (const auto& raw : split(list, ',')) {
        if (!tokens.empty() && raw.find('=') != std::string::npos &&
            raw.find(':') == std::string::npos &&
            tokens.back().find(':') != std::string::npos)
            tokens.back() += "," + raw;
        else
            tokens.push_back(raw);
    }
    std::vector<FilterSpec> out;
    for (const auto& token : tokens) out.push_back(parse_model(token));
    return out;
}

// --- graph sources --------------------------------------------------------

struct GraphOptions {
    std::string graph_path;
    std::string labels_path;
    std::string synthetic;

    void attach(CLI::App* cmd) {
        cmd->add_option("--graph", graph_path, "edge list file (u v per line)");
        cmd->add_option("--labels", labels_path, "node label file (id label)");
        cmd->add_option(
            "--synthetic", synthetic,
            "cycle:KxS (K disjoint S-cycles) or "
            "perturb:<edges>:<labels>:<new_edges>:<seed>");
    }

    Graph resolve() const {
        if (!synthetic.empty()) {
            if (!graph_path.empty())
                throw CLI::ValidationError("--graph",
                                           "--graph conflicts with --synthetic");
            auto parts = split(synthetic, ':');
            if (parts[0] == "cycle" && parts.size() == 2) {
                auto dims = split(parts[1], 'x');
                if (dims.size() == 2)
                    return cycle_block_graph(std::stoi(dims[0]),
                                             std::stoi(dims[1]));
            } else if (parts[0] == "perturb" && parts.size() == 5) {
                Graph base = load_labels(parts[2], load_edge_list(parts[1]));
                return heterophilic_perturbation(base, std::stoi(parts[3]),
                                                 std::stoull(parts[4]));
            }
            throw CLI::ValidationError("--synthetic",
                                       "expected cycle:KxS or "
                                       "perturb:<edges>:<labels>:<n>:<seed>");
        }
        if (graph_path.empty())
            throw CLI::ValidationError("--graph",
                                       "need --graph or --synthetic");
        Graph g = load_edge_list(graph_path);
        if (!labels_path.empty()) g = load_labels(labels_path, g);
        return g;
    }
};

// --- output ---------------------------------------------------------------

struct Output {
    std::string path;    // empty = stdout
    std::string format;  // csv | json

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file " + path);
        out << text;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--out", path, "output file (default stdout)");
        cmd->add_option("--format", format, "csv or json")
            ->default_val("csv")
            ->check(CLI::IsMember({"csv", "json"}));
    }
};

std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    row += '\n';
    return row;
}

double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double num = 0, den = 0;
    for (int i = 0; i < n; ++i) {
        num += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        den += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return num / den;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

// --- subcommands ----------------------------------------------------------

int run_spectrum(const GraphOptions& src, const Output& out) {
    Graph g = src.resolve();
    auto spectrum = eigendecompose(normalized_laplacian(g), false);
    const double defect = spectral_symmetry_defect(spectrum);
    auto profile =
        multiplicity_profile(spectrum, default_multiplicity_tol(spectrum));

    if (out.format == "json") {
        json j;
        j["n"] = g.num_nodes();
        j["eigenvalues"] = to_vector(spectrum.eigenvalues);
        j["lambda_max"] = spectrum.lambda_max();
        j["symmetry_defect"] = defect;
        json groups = json::array();
        for (const auto& grp : profile.groups)
            groups.push_back({{"value", grp.representative},
                              {"multiplicity", grp.indices.size()},
                              {"indices", grp.indices}});
        j["multiplicity_profile"] = groups;
        out.write(j.dump(2) + "\n");
        return 0;
    }

    std::string text;
    text += "# lambda_max=" + fmt17(spectrum.lambda_max()) + "\n";
    text += "# symmetry_defect=" + fmt17(defect) + "\n";
    std::string prof = "# multiplicity_profile=";
    for (std::size_t i = 0; i < profile.groups.size(); ++i) {
        if (i) prof += ' ';
        prof += fmt17(profile.groups[i].representative) + "x" +
                std::to_string(profile.groups[i].indices.size());
    }
    text += prof + "\n";
    text += "index,eigenvalue\n";
    for (int i = 0; i < spectrum.n(); ++i)
        text += csv_row({std::to_string(i), fmt17(spectrum.eigenvalues(i))});
    out.write(text);
    return 0;
}

int run_homophily_sweep(const std::string& models_arg, int n_eigs, double c,
                        const GridSpec& q_grid, double mean_degree,
                        const Output& out) {
    auto models = parse_model_list(models_arg);
    GraphContext ctx{mean_degree, 2.0};
    std::vector<double> eigenvalues(n_eigs);
    for (int i = 0; i < n_eigs; ++i)
        eigenvalues[i] = 2.0 * i / (n_eigs - 1);
    auto qs = q_grid.linear();

    std::vector<std::vector<double>> curves;
    for (const auto& m : models)
        curves.push_back(risk_homophily_sweep(m, eigenvalues, qs, c, ctx));

    if (out.format == "json") {
        json j;
        j["c"] = c;
        j["n_eigs"] = n_eigs;
        j["mean_degree"] = mean_degree;
        j["q_grid"] = qs;
        json per_model = json::object();
        for (std::size_t m = 0; m < models.size(); ++m)
            per_model[models[m].name()] = curves[m];
        j["risk"] = per_model;
        out.write(j.dump(2) + "\n");
        return 0;
    }

    std::string text;
    text += "# c=" + fmt17(c) + "\n";
    text += "# n_eigs=" + std::to_string(n_eigs) + "\n";
    std::vector<std::string> header{"q"};
    for (const auto& m : models) header.push_back(m.name());
    text += csv_row(header);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        std::vector<std::string> row{fmt17(qs[i])};
        for (const auto& curve : curves) row.push_back(fmt17(curve[i]));
        text += csv_row(row);
    }
    out.write(text);
    return 0;
}

int run_dataset_sweep(const GraphOptions& src, const std::string& models_arg,
                      const std::string& c_list_arg, const GridSpec& q_grid,
                      const Output& out) {
    Graph g = src.resolve();
    auto models = parse_model_list(models_arg);
    std::vector<double> c_list;
    for (const auto& tok : split(c_list_arg, ','))
        c_list.push_back(std::stod(tok));

    auto spectrum = eigendecompose(normalized_laplacian(g), false);
    auto eigenvalues = to_vector(spectrum.eigenvalues);
    GraphContext ctx{g.mean_degree(), spectrum.lambda_max()};
    auto qs = q_grid.linear();

    if (out.format == "json") {
        json j;
        j["n"] = g.num_nodes();
        j["lambda_max"] = ctx.lambda_max;
        j["q_grid"] = qs;
        json blocks = json::array();
        for (double c : c_list) {
            json block;
            block["c"] = c;
            json per_model = json::object();
            for (const auto& m : models)
                per_model[m.name()] =
                    risk_homophily_sweep(m, eigenvalues, qs, c, ctx);
            block["risk"] = per_model;
            blocks.push_back(block);
        }
        j["blocks"] = blocks;
        out.write(j.dump(2) + "\n");
        return 0;
    }

    std::string text;
    text += "# n=" + std::to_string(g.num_nodes()) + "\n";
    std::vector<std::string> header{"c", "q"};
    for (const auto& m : models) header.push_back(m.name());
    text += csv_row(header);
    for (double c : c_list) {
        std::vector<std::vector<double>> curves;
        for (const auto& m : models)
            curves.push_back(risk_homophily_sweep(m, eigenvalues, qs, c, ctx));
        for (std::size_t i = 0; i < qs.size(); ++i) {
            std::vector<std::string> row{fmt17(c), fmt17(qs[i])};
            for (const auto& curve : curves) row.push_back(fmt17(curve[i]));
            text += csv_row(row);
        }
    }
    out.write(text);
    return 0;
}

int run_misalign(const GraphOptions& src, const std::string& feature_mode,
                 const std::string& feature_file, int feature_dim,
                 std::uint64_t seed, const Output& out) {
    Graph g = src.resolve();
    if (!g.has_labels())
        throw std::runtime_error("misalign requires node labels");
    const int n = g.num_nodes();

    int n_classes = 0;
    for (int lab : g.labels()) n_classes = std::max(n_classes, lab + 1);
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n_classes);
    for (int i = 0; i < n; ++i) X(i, g.labels()[i]) = 1.0;

    auto L = normalized_laplacian(g);
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(n, n) - L.entries;

    Eigen::MatrixXd Z;
    if (feature_mode == "identity") {
        Z = Eigen::MatrixXd::Identity(n, n);
    } else if (feature_mode == "random") {
        const int dim = feature_dim > 0 ? feature_dim : n_classes;
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss;
        Z.resize(n, dim);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < dim; ++j) Z(i, j) = gauss(rng);
    } else if (feature_mode == "file") {
        std::ifstream in(feature_file);
        if (!in)
            throw std::runtime_error("cannot open feature file " +
                                     feature_file);
        std::vector<std::vector<double>> rows;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::vector<double> row;
            double v;
            while (ls >> v) row.push_back(v);
            rows.push_back(row);
        }
        if (static_cast<int>(rows.size()) != n)
            throw std::runtime_error("feature file rows != node count");
        Z.resize(n, rows[0].size());
        for (int i = 0; i < n; ++i)
            for (std::size_t j = 0; j < rows[i].size(); ++j) Z(i, j) = rows[i][j];
    } else {
        throw CLI::ValidationError("--feature-mode",
                                   "expected identity, random, or file");
    }

    Eigen::MatrixXd H = S * Z;
    json j;
    j["n"] = n;
    j["n_classes"] = n_classes;
    j["feature_mode"] = feature_mode;
    if (feature_mode == "random") {
        j["seed"] = seed;
        j["feature_dim"] = static_cast<int>(Z.cols());
    }
    j["misalignment"] = misalignment(H, X);
    j["normalized_misalignment"] = normalized_misalignment(H, X);
    j["homophily_ratio"] = homophily_ratio(g);

    if (out.format == "json") {
        out.write(j.dump(2) + "\n");
    } else {
        std::string text = "key,value\n";
        for (auto& [key, value] : j.items()) {
            if (value.is_number_float())
                text += csv_row({key, fmt17(value.get<double>())});
            else
                text += csv_row({key, value.dump()});
        }
        out.write(text);
    }
    return 0;
}

std::vector<EigenGroup> groups_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open groups file " + path);
    std::vector<EigenGroup> groups;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        EigenGroup grp;
        grp.lambda_star = 1.0;
        double v;
        while (ls >> v) grp.weights.push_back(v);
        if (!grp.weights.empty()) groups.push_back(grp);
    }
    if (groups.empty()) throw std::runtime_error("groups file " + path +
                                                 " has no groups");
    return groups;
}

int run_gat_gap(const GraphOptions& src, const std::string& groups_file,
                double c, std::uint64_t seed, bool verify, const Output& out) {
    std::vector<EigenGroup> groups;
    if (!groups_file.empty()) {
        groups = groups_from_file(groups_file);
    } else {
        Graph g = src.resolve();
        auto spectrum = eigendecompose(normalized_laplacian(g), false);
        auto profile =
            multiplicity_profile(spectrum, default_multiplicity_tol(spectrum));
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unif(0.5, 1.5);
        for (const auto& grp : profile.groups) {
            EigenGroup eg;
            eg.lambda_star = 1.0;
            for (std::size_t i = 0; i < grp.indices.size(); ++i)
                eg.weights.push_back(unif(rng));
            groups.push_back(eg);
        }
    }

    const double gap = gat_specformer_gap(groups, c);
    std::vector<double> per_group;
    for (const auto& grp : groups)
        per_group.push_back(gat_specformer_gap({grp}, c));

    int status = 0;
    std::optional<double> brute_gap;
    if (verify) {
        std::vector<double> products;
        std::vector<std::vector<int>> grouped, singles;
        for (const auto& grp : groups) {
            std::vector<int> members;
            for (double p : grp.products()) {
                members.push_back(static_cast<int>(products.size()));
                singles.push_back({static_cast<int>(products.size())});
                products.push_back(p);
            }
            grouped.push_back(members);
        }
        auto constrained = brute_force_group_optimum(products, grouped, c);
        auto free = brute_force_group_optimum(products, singles, c);
        brute_gap = constrained.risk - free.risk;
        if (std::abs(*brute_gap - gap) > 1e-4 * std::max(1.0, std::abs(gap)))
            status = kExitVerifyFail;
    }

    if (out.format == "json") {
        json j;
        j["c"] = c;
        j["n_groups"] = groups.size();
        j["gap"] = gap;
        j["per_group_gap"] = per_group;
        json sizes = json::array();
        for (const auto& grp : groups) sizes.push_back(grp.weights.size());
        j["group_sizes"] = sizes;
        if (brute_gap) {
            j["brute_force_gap"] = *brute_gap;
            j["verified"] = (status == 0);
        }
        out.write(j.dump(2) + "\n");
    } else {
        std::string text;
        text += "# c=" + fmt17(c) + "\n";
        text += "# total_gap=" + fmt17(gap) + "\n";
        if (brute_gap) {
            text += "# brute_force_gap=" + fmt17(*brute_gap) + "\n";
            text += std::string("# verified=") +
                    (status == 0 ? "true" : "false") + "\n";
        }
        text += "group,size,gap\n";
        for (std::size_t i = 0; i < groups.size(); ++i)
            text += csv_row({std::to_string(i),
                             std::to_string(groups[i].weights.size()),
                             fmt17(per_group[i])});
        out.write(text);
    }
    if (status != 0)
        std::cerr << "gat-gap: brute-force check disagrees with closed form\n";
    return status;
}

int run_powerlaw(double a, double b, int d, const GridSpec& c_grid,
                 const Output& out) {
    auto cs = c_grid.geometric();
    std::vector<double> gnn, mlp;
    for (double c : cs) {
        PowerLawProfile p{a, b, d, c};
        p.validate();
        gnn.push_back(powerlaw_risk_sum(p, PowerLawModel::GNN));
        mlp.push_back(powerlaw_risk_sum(p, PowerLawModel::MLP));
    }
    PowerLawProfile p{a, b, d, cs.front()};
    p.validate();
    const double gnn_slope = fit_loglog_slope(cs, gnn);
    const double mlp_slope = fit_loglog_slope(cs, mlp);
    const double gnn_exp = powerlaw_asymptotic_exponent(p, PowerLawModel::GNN);
    const double mlp_exp = powerlaw_asymptotic_exponent(p, PowerLawModel::MLP);

    if (out.format == "json") {
        json j;
        j["a"] = a;
        j["b"] = b;
        j["d"] = d;
        j["c_grid"] = cs;
        j["gnn_risk"] = gnn;
        j["mlp_risk"] = mlp;
        j["gnn_fitted_slope"] = gnn_slope;
        j["mlp_fitted_slope"] = mlp_slope;
        j["gnn_asymptotic_exponent"] = gnn_exp;
        j["mlp_asymptotic_exponent"] = mlp_exp;
        out.write(j.dump(2) + "\n");
        return 0;
    }

    std::string text;
    text += "# a=" + fmt17(a) + " b=" + fmt17(b) + " d=" + std::to_string(d) +
            "\n";
    text += "# gnn_fitted_slope=" + fmt17(gnn_slope) +
            " gnn_asymptotic_exponent=" + fmt17(gnn_exp) + "\n";
    text += "# mlp_fitted_slope=" + fmt17(mlp_slope) +
            " mlp_asymptotic_exponent=" + fmt17(mlp_exp) + "\n";
    text += "c,gnn_risk,mlp_risk\n";
    for (std::size_t i = 0; i < cs.size(); ++i)
        text += csv_row({fmt17(cs[i]), fmt17(gnn[i]), fmt17(mlp[i])});
    out.write(text);
    return 0;
}

struct OracleCase {
    SyntheticDesign design;
    double exact = 0.0;
};

Eigen::MatrixXd random_orthonormal(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    return qr.householderQ();
}

OracleCase random_oracle_case(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    OracleCase oc;
    SyntheticDesign& d = oc.design;
    d.n = 6 + static_cast<int>(unif(rng) * 11);  // 6..16
    const int dim =
        2 + static_cast<int>(unif(rng) * (std::min(12, d.n) - 1));
    d.lambda_star.resize(dim);
    d.lambda_tilde.resize(dim);
    d.weights.resize(dim);
    for (int i = 0; i < dim; ++i) {
        // all spectral quantities drawn from (0, 3]
        d.lambda_star(i) = 3.0 * (1.0 - unif(rng));
        d.lambda_tilde(i) = unif(rng) < 0.2 ? 0.0 : 3.0 * (1.0 - unif(rng));
        d.weights(i) = 0.05 + 2.95 * unif(rng);
    }
    const double c = 0.05 + 2.95 * unif(rng);
    d.n_train = 2 + static_cast<int>(unif(rng) * (d.n - 1));
    d.sigma2 = c * d.n_train / d.n;
    d.U = random_orthonormal(d.n, rng);

    RiskProblem p;
    p.c = d.c();
    for (int i = 0; i < dim; ++i) {
        p.lambda_tilde.push_back(d.lambda_tilde(i));
        p.lambda_star.push_back(d.lambda_star(i));
        p.weights.push_back(d.weights(i));
    }
    oc.exact = risk_exact(p);
    return oc;
}

int run_oracle_check(int problems, long trials, std::uint64_t seed,
                     double z_max, const Output& out) {
    if (trials < 1000)
        throw CLI::ValidationError("--trials", "need at least 1000 trials");
    std::mt19937_64 rng(seed);

    json rows = json::array();
    std::string text;
    text += "problem,n,d,c,exact,mc_mean,std_error,z\n";
    double worst = 0.0;
    for (int k = 0; k < problems; ++k) {
        auto oc = random_oracle_case(rng);
        auto est = simulate_risk(oc.design, trials, rng());
        const double z = (est.mean_risk - oc.exact) / est.std_error;
        worst = std::max(worst, std::abs(z));
        text += csv_row({std::to_string(k), std::to_string(oc.design.n),
                         std::to_string(oc.design.d()), fmt17(oc.design.c()),
                         fmt17(oc.exact), fmt17(est.mean_risk),
                         fmt17(est.std_error), fmt17(z)});
        rows.push_back({{"problem", k},
                        {"n", oc.design.n},
                        {"d", oc.design.d()},
                        {"c", oc.design.c()},
                        {"exact", oc.exact},
                        {"mc_mean", est.mean_risk},
                        {"std_error", est.std_error},
                        {"z", z}});
    }
    const bool ok = worst <= z_max;

    if (out.format == "json") {
        json j;
        j["trials"] = trials;
        j["seed"] = seed;
        j["z_max"] = z_max;
        j["worst_abs_z"] = worst;
        j["pass"] = ok;
        j["problems"] = rows;
        out.write(j.dump(2) + "\n");
    } else {
        std::string head;
        head += "# trials=" + std::to_string(trials) +
                " seed=" + std::to_string(seed) + "\n";
        head += "# worst_abs_z=" + fmt17(worst) + "\n";
        head += std::string("# pass=") + (ok ? "true" : "false") + "\n";
        out.write(head + text);
    }
    if (!ok) {
        std::cerr << "oracle-check: |z| exceeded " << z_max << "\n";
        return kExitVerifyFail;
    }
    return 0;
}

int run_response_table(const std::string& models_arg, int grid_points,
                       int depth, bool skip, double mean_degree,
                       const Output& out) {
    auto models = parse_model_list(models_arg);
    GraphContext ctx{mean_degree, 2.0};
    std::vector<double> grid(grid_points);
    for (int i = 0; i < grid_points; ++i)
        grid[i] = 2.0 * i / (grid_points - 1);

    std::vector<std::string> header{"lambda"};
    std::vector<std::vector<double>> columns;
    for (const auto& m : models) {
        if (depth > 1) {
            auto table = depth_response(m, depth, skip, grid, ctx);
            for (int l = 1; l <= depth; ++l) {
                header.push_back(m.name() + "_l" + std::to_string(l));
                columns.push_back(table.per_layer[l - 1]);
            }
        } else {
            NormalizedResponse resp(m, ctx, grid);
            header.push_back(m.name());
            std::vector<double> col;
            for (double lambda : grid) col.push_back(resp.magnitude(lambda));
            columns.push_back(col);
        }
    }

    if (out.format == "json") {
        json j;
        j["grid"] = grid;
        j["depth"] = depth;
        j["skip"] = skip;
        json cols = json::object();
        for (std::size_t i = 1; i < header.size(); ++i)
            cols[header[i]] = columns[i - 1];
        j["magnitude"] = cols;
        out.write(j.dump(2) + "\n");
        return 0;
    }

    std::string text = csv_row(header);
    for (int i = 0; i < grid_points; ++i) {
        std::vector<std::string> row{fmt17(grid[i])};
        for (const auto& col : columns) row.push_back(fmt17(col[i]));
        text += csv_row(row);
    }
    out.write(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact generalisation-error toolkit for spectral GNN filters"};
    app.require_subcommand(1);

    // spectrum ------------------------------------------------------------
    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "eigenvalues and spectral diagnostics");
    GraphOptions spectrum_src;
    Output spectrum_out;
    spectrum_src.attach(spectrum_cmd);
    spectrum_out.attach(spectrum_cmd);

    // homophily-sweep ------------------------------------------------------
    auto* hs_cmd = app.add_subcommand(
        "homophily-sweep", "average risk over q on a uniform eigenvalue grid");
    std::string hs_models = "gcn";
    int hs_neigs = 100;
    double hs_c = 1.0;
    std::string hs_qgrid = "0:1:100";
    double hs_degree = 2.0;
    Output hs_out;
    hs_cmd->add_option("--models", hs_models, kModelHelp);
    hs_cmd->add_option("--n-eigs", hs_neigs, "uniform grid size on [0,2]")
        ->check(CLI::Range(2, 1000000));
    hs_cmd->add_option("--c", hs_c, "noise ratio n sigma^2 / n_train");
    hs_cmd->add_option("--q-grid", hs_qgrid, "homophily grid start:stop:count");
    hs_cmd->add_option("--mean-degree", hs_degree, "average degree for "
                                                   "degree-aware filters");
    hs_out.attach(hs_cmd);

    // dataset-sweep --------------------------------------------------------
    auto* ds_cmd = app.add_subcommand(
        "dataset-sweep", "risk over q using a graph's true eigenvalues");
    GraphOptions ds_src;
    std::string ds_models = "gcn";
    std::string ds_clist = "0.1,0.01,0.001,0.0001";
    std::string ds_qgrid = "0:1:100";
    Output ds_out;
    ds_src.attach(ds_cmd);
    ds_cmd->add_option("--models", ds_models, kModelHelp);
    ds_cmd->add_option("--c-list", ds_clist, "comma-separated noise ratios");
    ds_cmd->add_option("--q-grid", ds_qgrid, "homophily grid start:stop:count");
    ds_out.attach(ds_cmd);

    // misalign -------------------------------------------------------------
    auto* mis_cmd = app.add_subcommand(
        "misalign", "label energy outside the embedding column space");
    GraphOptions mis_src;
    std::string mis_mode = "identity";
    std::string mis_file;
    int mis_dim = 0;
    std::uint64_t mis_seed = 42;
    Output mis_out;
    mis_src.attach(mis_cmd);
    mis_cmd->add_option("--feature-mode", mis_mode,
                        "identity, random, or file");
    mis_cmd->add_option("--feature-file", mis_file,
                        "whitespace matrix, one node per row");
    mis_cmd->add_option("--feature-dim", mis_dim,
                        "columns for random features (default: #classes)");
    mis_cmd->add_option("--seed", mis_seed, "random feature seed");
    mis_out.attach(mis_cmd);

    // gat-gap --------------------------------------------------------------
    auto* gat_cmd = app.add_subcommand(
        "gat-gap", "risk gap of shared responses on repeated eigenvalues");
    GraphOptions gat_src;
    std::string gat_groups;
    double gat_c = 1.0;
    std::uint64_t gat_seed = 42;
    bool gat_verify = false;
    Output gat_out;
    gat_src.attach(gat_cmd);
    gat_cmd->add_option("--groups", gat_groups,
                        "groups file: one group of prior products per line");
    gat_cmd->add_option("--c", gat_c, "noise ratio");
    gat_cmd->add_option("--seed", gat_seed, "per-eigenvalue weight seed");
    gat_cmd->add_flag("--verify", gat_verify,
                      "cross-check against brute-force minimization");
    gat_out.attach(gat_cmd);

    // powerlaw -------------------------------------------------------------
    auto* pl_cmd = app.add_subcommand(
        "powerlaw", "power-law spectra: exact sums and scaling exponents");
    double pl_a = 2.0, pl_b = 4.0;
    int pl_d = 10000;
    std::string pl_cgrid = "0.0001:0.01:20";
    Output pl_out;
    pl_cmd->add_option("--a", pl_a, "teacher decay exponent (> 1)");
    pl_cmd->add_option("--b", pl_b, "aligned-signal decay exponent");
    pl_cmd->add_option("--d", pl_d, "number of modes")->check(CLI::Range(1, 100000000));
    pl_cmd->add_option("--c-grid", pl_cgrid,
                       "geometric noise grid start:stop:count");
    pl_out.attach(pl_cmd);

    // oracle-check ---------------------------------------------------------
    auto* oc_cmd = app.add_subcommand(
        "oracle-check", "Monte Carlo validation of the closed-form risk");
    int oc_problems = 20;
    long oc_trials = 100000;
    std::uint64_t oc_seed = 42;
    double oc_zmax = 4.0;
    Output oc_out;
    oc_cmd->add_option("--problems", oc_problems, "battery size")
        ->check(CLI::Range(1, 10000));
    oc_cmd->add_option("--trials", oc_trials, "Monte Carlo trials per problem");
    oc_cmd->add_option("--seed", oc_seed, "battery seed");
    oc_cmd->add_option("--z-max", oc_zmax, "failure threshold on |z|");
    oc_out.attach(oc_cmd);

    // response-table -------------------------------------------------------
    auto* rt_cmd = app.add_subcommand(
        "response-table", "normalized frequency responses on a lambda grid");
    std::string rt_models = "gcn";
    int rt_points = 200;
    int rt_depth = 1;
    bool rt_skip = false;
    double rt_degree = 2.0;
    Output rt_out;
    rt_cmd->add_option("--models", rt_models, kModelHelp);
    rt_cmd->add_option("--grid-points", rt_points, "lambda grid size on [0,2]")
        ->check(CLI::Range(2, 1000000));
    rt_cmd->add_option("--depth", rt_depth, "emit per-layer columns 1..L")
        ->check(CLI::Range(1, 64));
    rt_cmd->add_flag("--skip", rt_skip, "residual-averaged depth response");
    rt_cmd->add_option("--mean-degree", rt_degree, "average degree for "
                                                   "degree-aware filters");
    rt_out.attach(rt_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum_cmd->parsed())
            return run_spectrum(spectrum_src, spectrum_out);
        if (hs_cmd->parsed())
            return run_homophily_sweep(hs_models, hs_neigs, hs_c,
                                       parse_grid(hs_qgrid), hs_degree, hs_out);
        if (ds_cmd->parsed())
            return run_dataset_sweep(ds_src, ds_models, ds_clist,
                                     parse_grid(ds_qgrid), ds_out);
        if (mis_cmd->parsed())
            return run_misalign(mis_src, mis_mode, mis_file, mis_dim, mis_seed,
                                mis_out);
        if (gat_cmd->parsed())
            return run_gat_gap(gat_src, gat_groups, gat_c, gat_seed,
                               gat_verify, gat_out);
        if (pl_cmd->parsed())
            return run_powerlaw(pl_a, pl_b, pl_d, parse_grid(pl_cgrid),
                                pl_out);
        if (oc_cmd->parsed())
            return run_oracle_check(oc_problems, oc_trials, oc_seed, oc_zmax,
                                    oc_out);
        if (rt_cmd->parsed())
            return run_response_table(rt_models, rt_points, rt_depth, rt_skip,
                                      rt_degree, rt_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
