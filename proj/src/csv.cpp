#include "mterm/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mterm {

std::string g17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trigpoly_to_csv(const TrigPoly& poly) {
    std::string out = "k,re,im\n";
    for (int k = -poly.degree(); k <= poly.degree(); ++k) {
        const cplx c = poly.coeff(k);
        out += std::to_string(k) + "," + g17(c.real()) + "," + g17(c.imag()) + "\n";
    }
    return out;
}

TrigPoly trigpoly_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    struct Row { int k; double re, im; };
    std::vector<Row> rows;
    int max_k = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("k,", 0) == 0) continue;  // header
        Row r;
        if (std::sscanf(line.c_str(), "%d,%lf,%lf", &r.k, &r.re, &r.im) != 3)
            throw std::runtime_error("trigpoly_from_csv: bad row: " + line);
        rows.push_back(r);
        max_k = std::max(max_k, std::abs(r.k));
    }
    if (rows.empty()) throw std::runtime_error("trigpoly_from_csv: no rows");
    TrigPoly poly(max_k);
    for (const Row& r : rows) poly.set_coeff(r.k, {r.re, r.im});
    return poly;
}

std::string gridsignal_to_csv(const GridSignal& signal) {
    std::string out = "j,t_j,value\n";
    for (int j = 0; j < signal.samples; ++j) {
        out += std::to_string(j) + "," + g17(signal.t_at(j)) + "," +
               g17(signal.values[j].real()) + "\n";
    }
    return out;
}

std::string mterm_results_to_csv(
    const std::vector<std::pair<int, double>>& m_s,
    const std::vector<MTermResult>& results) {
    if (m_s.size() != results.size())
        throw std::invalid_argument("mterm_results_to_csv: size mismatch");
    std::string out = "m,s,method,error,certificate,gamma\n";
    for (size_t i = 0; i < results.size(); ++i) {
        const MTermResult& r = results[i];
        std::string gamma;
        for (size_t j = 0; j < r.gamma.size(); ++j) {
            if (j) gamma += ";";
            gamma += std::to_string(r.gamma[j]);
        }
        out += std::to_string(m_s[i].first) + "," + g17(m_s[i].second) + "," +
               to_string(r.method) + "," + g17(r.error) + "," +
               (r.certificate ? g17(*r.certificate) : std::string("")) + "," +
               gamma + "\n";
    }
    return out;
}

std::string extremal_to_csv(const ExtremalFunction& fs) {
    std::string out = "key,value\n";
    out += "K0," + g17(fs.K0) + "\n";
    out += "A," + g17(fs.A) + "\n";
    out += "C1," + g17(fs.C1) + "\n";
    out += "n," + std::to_string(fs.n) + "\n";
    out += trigpoly_to_csv(fs.poly);
    return out;
}

}  // namespace mterm
