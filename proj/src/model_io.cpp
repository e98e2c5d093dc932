#include "svddfraud/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "svddfraud/errors.hpp"

namespace svddfraud::model_io {

namespace {

constexpr const char* kMagic = "svddfraud-model";
constexpr int kVersion = 1;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_header(std::ostream& out, const char* type, const KernelSpec& kernel, std::size_t dim, double box_c) {
  out << kMagic << ' ' << kVersion << '\n'
      << "type " << type << '\n'
      << "kernel " << to_string(kernel.kind) << ' ' << fmt(kernel.sigma) << '\n'
      << "dim " << dim << '\n'
      << "box_c " << fmt(box_c) << '\n';
}

void write_support(std::ostream& out, std::size_t dim, const std::vector<std::size_t>& indices,
                   const std::vector<double>& alphas, const std::vector<double>& rows) {
  out << "support " << alphas.size() << '\n';
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    out << indices[a] << ' ' << fmt(alphas[a]);
    for (std::size_t d = 0; d < dim; ++d) out << ' ' << fmt(rows[a * dim + d]);
    out << '\n';
  }
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::istringstream field(const std::string& key) {
    std::string line;
    if (!std::getline(in_, line)) throw DataError("model file truncated before '" + key + "'");
    std::istringstream ss(line);
    std::string got;
    ss >> got;
    if (got != key) throw DataError("model file: expected '" + key + "', found '" + got + "'");
    return ss;
  }

  template <class T>
  T value(const std::string& key) {
    auto ss = field(key);
    std::string token;
    ss >> token;
    return parse<T>(token, key);
  }

  template <class T>
  static T parse(const std::string& token, const std::string& what) {
    std::size_t used = 0;
    try {
      if constexpr (std::is_same_v<T, double>) {
        // strtod parses the 17-digit form back to the identical double.
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        used = static_cast<std::size_t>(end - token.c_str());
        if (used == token.size() && !token.empty()) return v;
      } else {
        const auto v = std::stoull(token, &used);
        if (used == token.size()) return static_cast<T>(v);
      }
    } catch (const std::exception&) {
    }
    throw DataError("model file: bad value for " + what + ": '" + token + "'");
  }

  void support(std::size_t dim, std::vector<std::size_t>& indices, std::vector<double>& alphas,
               std::vector<double>& rows) {
    const auto count = value<std::size_t>("support");
    std::string line;
    for (std::size_t a = 0; a < count; ++a) {
      if (!std::getline(in_, line)) throw DataError("model file truncated in support rows");
      std::istringstream ss(line);
      std::string token;
      ss >> token;
      indices.push_back(parse<std::size_t>(token, "support index"));
      ss >> token;
      alphas.push_back(parse<double>(token, "alpha"));
      for (std::size_t d = 0; d < dim; ++d) {
        if (!(ss >> token)) throw DataError("model file: short support row");
        rows.push_back(parse<double>(token, "support row"));
      }
    }
  }

 private:
  std::istream& in_;
};

}  // namespace

void write_model(std::ostream& out, const SvddModel& model) {
  write_header(out, "svdd", model.kernel, model.dim, model.box_c);
  out << "radius_sq " << fmt(model.radius_sq) << '\n'
      << "offset_term " << fmt(model.offset_term) << '\n'
      << "training_rows " << model.training_rows << '\n';
  write_support(out, model.dim, model.support_indices, model.alphas, model.support_rows);
}

void write_model(std::ostream& out, const SvmModel& model) {
  write_header(out, "svm", model.kernel, model.dim, model.box_c);
  out << "bias " << fmt(model.bias) << '\n' << "training_rows " << model.training_rows << '\n';
  write_support(out, model.dim, model.support_indices, model.signed_alphas, model.support_rows);
}

template <class Model>
static void save_impl(const std::filesystem::path& path, const Model& model) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_model(out, model);
}

void save(const std::filesystem::path& path, const SvddModel& model) { save_impl(path, model); }
void save(const std::filesystem::path& path, const SvmModel& model) { save_impl(path, model); }

AnyModel read_model(std::istream& in) {
  Reader r(in);
  {
    auto ss = r.field(kMagic);
    int version = 0;
    if (!(ss >> version) || version != kVersion) throw DataError("unsupported model file version");
  }
  std::string type;
  r.field("type") >> type;
  KernelSpec kernel;
  {
    auto ss = r.field("kernel");
    std::string kind, sigma;
    ss >> kind >> sigma;
    kernel.kind = parse_kernel_kind(kind);
    kernel.sigma = Reader::parse<double>(sigma, "sigma");
  }
  const auto dim = r.value<std::size_t>("dim");
  const auto box_c = r.value<double>("box_c");
  if (type == "svdd") {
    SvddModel m;
    m.kernel = kernel;
    m.dim = dim;
    m.box_c = box_c;
    m.radius_sq = r.value<double>("radius_sq");
    m.offset_term = r.value<double>("offset_term");
    m.training_rows = r.value<std::size_t>("training_rows");
    r.support(dim, m.support_indices, m.alphas, m.support_rows);
    return m;
  }
  if (type == "svm") {
    SvmModel m;
    m.kernel = kernel;
    m.dim = dim;
    m.box_c = box_c;
    m.bias = r.value<double>("bias");
    m.training_rows = r.value<std::size_t>("training_rows");
    r.support(dim, m.support_indices, m.signed_alphas, m.support_rows);
    return m;
  }
  throw DataError("unknown model type: " + type);
}

AnyModel load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("missing file: " + path.string());
  return read_model(in);
}

}  // namespace svddfraud::model_io
