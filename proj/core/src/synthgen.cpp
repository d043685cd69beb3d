#include "citenorm/synthgen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include <boost/math/special_functions/erf.hpp>

#include "citenorm/rng.hpp"

namespace citenorm {

namespace {

double normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0))
    throw validation_error("probability level must lie strictly between 0 and 1");
  return 1.4142135623730951 * boost::math::erf_inv(2.0 * prob - 1.0);
}

std::vector<FieldSpec> sorted_validated_specs(const GeneratorConfig& config) {
  if (config.field_specs.empty()) throw validation_error("no field specs given");
  if (config.horizon_years < 1) throw validation_error("horizon must be at least 1");
  std::vector<FieldSpec> specs = config.field_specs;
  std::sort(specs.begin(), specs.end(),
            [](const FieldSpec& a, const FieldSpec& b) { return a.field_id < b.field_id; });
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    if (spec.field_id.empty()) throw validation_error("field spec with empty field_id");
    if (i > 0 && spec.field_id == specs[i - 1].field_id)
      throw validation_error("duplicate field_id '" + spec.field_id + "' in field specs");
    if (spec.n < 1)
      throw validation_error("field " + spec.field_id + ": n must be at least 1");
    if (!(spec.c0 > 0.0))
      throw validation_error("field " + spec.field_id + ": c0 must be positive");
    if (!(spec.sigma > 0.0))
      throw validation_error("field " + spec.field_id + ": sigma must be positive");
    if (!(spec.aging_theta > 0.0 && spec.aging_theta < 1.0))
      throw validation_error("field " + spec.field_id + ": aging_theta must lie in (0, 1)");
  }
  return specs;
}

double resolve_global_sigma(const GeneratorConfig& config, std::span<const FieldSpec> specs) {
  if (config.sigma) {
    if (!(*config.sigma > 0.0)) throw validation_error("sigma must be positive");
    return *config.sigma;
  }
  for (const auto& spec : specs)
    if (spec.sigma != specs.front().sigma)
      throw validation_error(
          "this model needs one global sigma: set it explicitly or give every field the same "
          "sigma");
  return specs.front().sigma;
}

std::string make_pub_id(const std::string& field_id, std::int64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "-%06lld", static_cast<long long>(index));
  return field_id + buf;
}

std::vector<CitationEvent> spread_over_years(StreamRng& rng, std::int64_t count, int pub_year,
                                             int horizon, double theta) {
  std::vector<CitationEvent> events;
  if (count == 0) return events;
  if (horizon <= 1) {
    events.push_back({pub_year, count});
    return events;
  }
  std::vector<std::int64_t> per_offset(static_cast<std::size_t>(horizon), 0);
  for (std::int64_t i = 0; i < count; ++i)
    ++per_offset[static_cast<std::size_t>(rng.next_truncated_geometric(theta, horizon))];
  for (int d = 0; d < horizon; ++d)
    if (per_offset[static_cast<std::size_t>(d)] > 0)
      events.push_back({pub_year + d, per_offset[static_cast<std::size_t>(d)]});
  return events;
}

// Lower median: for an even count, the smaller of the two central values.
double lower_median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

}  // namespace

double max_attainable_quantile(double prob) {
  const double z = normal_quantile(prob);
  if (!(z > 0.0))
    throw validation_error("probability level must exceed 0.5");
  return std::exp(z * z / 2.0);
}

double lognormal_sigma_for_quantile(double target_q, double prob, bool larger_root) {
  if (!(target_q > 1.0)) throw validation_error("target quantile must exceed 1");
  const double z = normal_quantile(prob);
  if (!(z > 0.0)) throw validation_error("probability level must exceed 0.5");
  double disc = z * z - 2.0 * std::log(target_q);
  // absorb rounding right at the attainability boundary
  if (disc < 0.0 && disc >= -64.0 * 2.220446049250313e-16 * z * z) disc = 0.0;
  if (disc < 0.0) {
    const double bound = std::exp(z * z / 2.0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "target quantile %.6g unattainable for a mean-1 lognormal: the %.6g quantile "
                  "can be at most %.6g",
                  target_q, prob, bound);
    throw sigma_unattainable_error(buf, bound);
  }
  const double root = std::sqrt(disc);
  return larger_root ? z + root : z - root;
}

std::vector<FieldSpec> parse_field_specs(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw parse_error("field specs: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "field_id,n,c0,sigma,aging_theta")
    throw parse_error("field specs: expected header 'field_id,n,c0,sigma,aging_theta'");
  std::vector<FieldSpec> specs;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    FieldSpec spec;
    std::size_t start = 0;
    std::vector<std::string_view> cols;
    std::string_view view(line);
    while (true) {
      std::size_t pos = view.find(',', start);
      if (pos == std::string_view::npos) {
        cols.push_back(view.substr(start));
        break;
      }
      cols.push_back(view.substr(start, pos - start));
      start = pos + 1;
    }
    if (cols.size() != 5)
      throw parse_error("field specs line " + std::to_string(line_no) + ": expected 5 columns");
    spec.field_id = std::string(cols[0]);
    auto num = [&](std::string_view s, const char* what) {
      double v{};
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size())
        throw parse_error("field specs line " + std::to_string(line_no) + ": cannot parse " +
                          std::string(what));
      return v;
    };
    std::int64_t n{};
    {
      auto [ptr, ec] = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), n);
      if (ec != std::errc{} || ptr != cols[1].data() + cols[1].size())
        throw parse_error("field specs line " + std::to_string(line_no) + ": cannot parse n");
    }
    spec.n = n;
    spec.c0 = num(cols[2], "c0");
    spec.sigma = num(cols[3], "sigma");
    spec.aging_theta = num(cols[4], "aging_theta");
    specs.push_back(std::move(spec));
  }
  return specs;
}

void write_labels(std::ostream& out, std::span<const FieldLabel> labels) {
  out << "field_id,model,c0,sigma,n\n";
  char buf[64];
  for (const auto& label : labels) {
    out << label.field_id << ',' << label.model << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", label.c0);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", label.sigma);
    out << buf << ',' << label.n << '\n';
  }
}

SyntheticCorpus generate(const GeneratorConfig& config) {
  auto specs = sorted_validated_specs(config);
  SyntheticCorpus corpus;

  double global_sigma = 0.0;
  switch (config.model) {
    case GeneratorModel::universal:
      global_sigma = resolve_global_sigma(config, specs);
      for (const auto& spec : specs)
        if (spec.c0 != specs.front().c0)
          throw validation_error("universal model requires one shared c0 across fields");
      corpus.resolved_sigma = global_sigma;
      break;
    case GeneratorModel::poisson_lognormal:
      global_sigma = resolve_global_sigma(config, specs);
      corpus.resolved_sigma = global_sigma;
      break;
    case GeneratorModel::heterogeneous:
      if (config.sigma)
        throw validation_error(
            "heterogeneous model takes per-field sigmas from the field specs; drop the global "
            "sigma");
      break;
  }

  double sigma_median = 0.0;
  if (config.model == GeneratorModel::heterogeneous) {
    std::vector<double> sigmas;
    sigmas.reserve(specs.size());
    for (const auto& spec : specs) sigmas.push_back(spec.sigma);
    sigma_median = lower_median(std::move(sigmas));
  }

  std::size_t total_pubs = 0;
  for (const auto& spec : specs) total_pubs += static_cast<std::size_t>(spec.n);
  corpus.publications.reserve(total_pubs);
  corpus.citations.reserve(total_pubs);
  corpus.labels.reserve(specs.size());

  for (const auto& spec : specs) {
    StreamRng rng(config.seed, spec.field_id);
    const double sigma_f =
        config.model == GeneratorModel::heterogeneous ? spec.sigma : global_sigma;
    for (std::int64_t i = 0; i < spec.n; ++i) {
      Publication pub;
      pub.pub_id = make_pub_id(spec.field_id, i);
      pub.year = config.publication_year;
      pub.doc_type = "article";
      pub.field_ids = {spec.field_id};

      std::int64_t count = 0;
      if (config.model == GeneratorModel::poisson_lognormal) {
        count = rng.next_poisson(spec.c0 * rng.next_lognormal_mean1(sigma_f));
      } else {
        count = std::llround(spec.c0 * rng.next_lognormal_mean1(sigma_f));
      }
      auto events = spread_over_years(rng, count, config.publication_year, config.horizon_years,
                                      spec.aging_theta);
      if (!events.empty()) corpus.citations.emplace(pub.pub_id, std::move(events));
      corpus.publications.push_back(std::move(pub));
    }

    FieldLabel label;
    label.field_id = spec.field_id;
    label.c0 = spec.c0;
    label.sigma = sigma_f;
    label.n = spec.n;
    switch (config.model) {
      case GeneratorModel::universal:
        label.model = "universal";
        break;
      case GeneratorModel::poisson_lognormal:
        label.model = "poisson_lognormal";
        break;
      case GeneratorModel::heterogeneous:
        // fields at the shared (median) sigma follow the common distribution
        label.model = spec.sigma == sigma_median ? "universal" : "heterogeneous";
        break;
    }
    corpus.labels.push_back(std::move(label));
  }
  return corpus;
}

SyntheticCorpus generate_universal(GeneratorConfig config) {
  config.model = GeneratorModel::universal;
  return generate(config);
}

SyntheticCorpus generate_poisson_lognormal(GeneratorConfig config) {
  config.model = GeneratorModel::poisson_lognormal;
  return generate(config);
}

SyntheticCorpus generate_heterogeneous(GeneratorConfig config) {
  config.model = GeneratorModel::heterogeneous;
  return generate(config);
}

}  // namespace citenorm
