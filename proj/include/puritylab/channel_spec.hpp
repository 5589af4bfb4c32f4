#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "puritylab/channels.hpp"
#include "puritylab/linalg.hpp"

namespace puritylab {

// Channel specs are JSON documents:
//   {"kind":"depolarizing","d":3,"lambda":0.5}
//   {"kind":"hadamard","c_re":[[...]],"c_im":[[...]]}
//   {"kind":"choi","d_in":2,"d_out":2,"re":[[...]],"im":[[...]]}
//   {"kind":"kraus","ops":[{"re":[[...]],"im":[[...]]}, ...]}
//   {"kind":"cq","states":[{"re":...,"im":...}, ...]}
//   {"kind":"qc","povm":[{"re":...,"im":...}, ...]}
//   {"kind":"eb","povm":[...],"states":[...]}
//   {"kind":"identity","d":2} / {"kind":"trace","d":3}
//   {"kind":"random","d_in":2,"d_out":2,"env":2,"seed":7}
//   {"kind":"random_cp","d_in":2,"d_out":2,"rank":4,"seed":7}
//   {"kind":"tensor","factors":[<spec>,<spec>,...]}
//   {"kind":"adjoint","of":<spec>} / {"kind":"conjugate","of":<spec>}
// Matrices are separate real/imaginary row-major 2-D arrays of finite doubles.

namespace detail {

[[noreturn]] inline void spec_error(const std::string& context,
                                    const std::string& what) {
  throw InvalidInput("channel spec: " + context + ": " + what);
}

inline Matrix parse_matrix_parts(const nlohmann::json& re,
                                 const nlohmann::json& im,
                                 const std::string& context) {
  if (!re.is_array() || re.empty() || !re[0].is_array())
    spec_error(context, "real part must be a 2-D array");
  const Index rows = static_cast<Index>(re.size());
  const Index cols = static_cast<Index>(re[0].size());
  const bool has_im = !im.is_null();
  if (has_im && (!im.is_array() || im.size() != re.size()))
    spec_error(context, "imaginary part shape differs from real part");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row_re = re[static_cast<std::size_t>(i)];
    if (static_cast<Index>(row_re.size()) != cols)
      spec_error(context, "ragged rows in real part");
    for (Index j = 0; j < cols; ++j) {
      double vr = 0.0, vi = 0.0;
      if (!row_re[static_cast<std::size_t>(j)].is_number())
        spec_error(context, "non-numeric entry in real part");
      vr = row_re[static_cast<std::size_t>(j)].get<double>();
      if (has_im) {
        const auto& row_im = im[static_cast<std::size_t>(i)];
        if (static_cast<Index>(row_im.size()) != cols ||
            !row_im[static_cast<std::size_t>(j)].is_number())
          spec_error(context, "bad imaginary part");
        vi = row_im[static_cast<std::size_t>(j)].get<double>();
      }
      if (!std::isfinite(vr) || !std::isfinite(vi))
        spec_error(context, "non-finite matrix entry");
      m(i, j) = Complex(vr, vi);
    }
  }
  return m;
}

inline Matrix parse_matrix_object(const nlohmann::json& j,
                                  const std::string& context) {
  if (!j.is_object() || !j.contains("re"))
    spec_error(context, "expected an object with \"re\" (and optional \"im\")");
  return parse_matrix_parts(j["re"], j.value("im", nlohmann::json()), context);
}

inline std::vector<Matrix> parse_matrix_list(const nlohmann::json& j,
                                             const std::string& context) {
  if (!j.is_array() || j.empty())
    spec_error(context, "expected a nonempty array of matrices");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_matrix_object(j[i], context + "[" + std::to_string(i) + "]"));
  return out;
}

template <typename T>
T require_field(const nlohmann::json& j, const char* field,
                const std::string& context) {
  if (!j.contains(field))
    spec_error(context, std::string("missing field \"") + field + "\"");
  try {
    return j.at(field).get<T>();
  } catch (const nlohmann::json::exception&) {
    spec_error(context, std::string("field \"") + field + "\" has the wrong type");
  }
}

}  // namespace detail

inline CpMap build_channel(const nlohmann::json& spec,
                           const std::string& context = "spec") {
  if (!spec.is_object())
    detail::spec_error(context, "expected a JSON object");
  const std::string kind =
      detail::require_field<std::string>(spec, "kind", context);
  const std::string ctx = context + "(" + kind + ")";

  if (kind == "depolarizing") {
    const Index d = detail::require_field<Index>(spec, "d", ctx);
    const double lambda = detail::require_field<double>(spec, "lambda", ctx);
    return depolarizing(d, lambda);
  }
  if (kind == "identity")
    return identity_map(detail::require_field<Index>(spec, "d", ctx));
  if (kind == "trace")
    return trace_channel(detail::require_field<Index>(spec, "d", ctx));
  if (kind == "hadamard") {
    if (!spec.contains("c_re")) detail::spec_error(ctx, "missing field \"c_re\"");
    return hadamard_map(detail::parse_matrix_parts(
        spec["c_re"], spec.value("c_im", nlohmann::json()), ctx));
  }
  if (kind == "choi") {
    const Index d_in = detail::require_field<Index>(spec, "d_in", ctx);
    const Index d_out = detail::require_field<Index>(spec, "d_out", ctx);
    if (!spec.contains("re")) detail::spec_error(ctx, "missing field \"re\"");
    const Matrix x = detail::parse_matrix_parts(
        spec["re"], spec.value("im", nlohmann::json()), ctx);
    return from_choi(x, d_in, d_out);
  }
  if (kind == "kraus") {
    if (!spec.contains("ops")) detail::spec_error(ctx, "missing field \"ops\"");
    return from_kraus(detail::parse_matrix_list(spec["ops"], ctx));
  }
  if (kind == "cq") {
    if (!spec.contains("states"))
      detail::spec_error(ctx, "missing field \"states\"");
    return cq_map(detail::parse_matrix_list(spec["states"], ctx));
  }
  if (kind == "qc") {
    if (!spec.contains("povm")) detail::spec_error(ctx, "missing field \"povm\"");
    return qc_map(detail::parse_matrix_list(spec["povm"], ctx));
  }
  if (kind == "eb") {
    if (!spec.contains("povm") || !spec.contains("states"))
      detail::spec_error(ctx, "needs \"povm\" and \"states\" lists");
    return eb_map(detail::parse_matrix_list(spec["povm"], ctx),
                  detail::parse_matrix_list(spec["states"], ctx));
  }
  if (kind == "random") {
    return random_channel(detail::require_field<Index>(spec, "d_in", ctx),
                          detail::require_field<Index>(spec, "d_out", ctx),
                          detail::require_field<Index>(spec, "env", ctx),
                          detail::require_field<std::uint64_t>(spec, "seed", ctx));
  }
  if (kind == "random_cp") {
    return random_cp(detail::require_field<Index>(spec, "d_in", ctx),
                     detail::require_field<Index>(spec, "d_out", ctx),
                     detail::require_field<Index>(spec, "rank", ctx),
                     detail::require_field<std::uint64_t>(spec, "seed", ctx));
  }
  if (kind == "tensor") {
    if (!spec.contains("factors") || !spec["factors"].is_array() ||
        spec["factors"].empty())
      detail::spec_error(ctx, "needs a nonempty \"factors\" array");
    const auto& factors = spec["factors"];
    CpMap out = build_channel(factors[0], ctx + ".factors[0]");
    for (std::size_t i = 1; i < factors.size(); ++i)
      out = tensor_map(out, build_channel(
                                factors[i], ctx + ".factors[" +
                                                std::to_string(i) + "]"));
    return out;
  }
  if (kind == "adjoint") {
    if (!spec.contains("of")) detail::spec_error(ctx, "missing field \"of\"");
    return adjoint_map(build_channel(spec["of"], ctx + ".of"));
  }
  if (kind == "conjugate") {
    if (!spec.contains("of")) detail::spec_error(ctx, "missing field \"of\"");
    return conjugate_map(build_channel(spec["of"], ctx + ".of"));
  }
  detail::spec_error(context, "unknown kind \"" + kind + "\"");
}

inline nlohmann::json parse_spec_text(const std::string& text,
                                      const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("channel spec " + origin + ": " + e.what());
  }
}

inline CpMap load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidInput("channel spec: cannot open file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return build_channel(parse_spec_text(ss.str(), path), path);
}

}  // namespace puritylab
