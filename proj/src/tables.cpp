#include "gsp4/tables.hpp"

#include <sstream>
#include <vector>

#include "gsp4/weyl.hpp"
#include "json.hpp"

namespace gsp4::tables {

namespace {

const std::vector<Parabolic> kSigmaOrder = {Parabolic::Siegel,
                                            Parabolic::Klingen,
                                            Parabolic::Borel};

struct Row {
  std::string w;
  int q_prime, q;
};

std::vector<Row> rows_for(Parabolic q, Parabolic sigma) {
  std::vector<Row> out;
  for (const auto& dc : weyl::double_cosets(q, sigma)) {
    auto [qp, qq] = weyl::degree_stats(q, sigma, dc.rep);
    out.push_back({weyl::name(dc.rep), qp, qq});
  }
  return out;
}

}  // namespace

std::string tsv_table(Parabolic q) {
  std::ostringstream os;
  os << "# double-coset degree table, q = " << parabolic_name(q) << "\n";
  os << "# columns: sigma, class representative w, q', q\n";
  os << "sigma\tw\tq_prime\tq\n";
  for (Parabolic sigma : kSigmaOrder)
    for (const Row& r : rows_for(q, sigma))
      os << parabolic_name(sigma) << '\t' << r.w << '\t' << r.q_prime << '\t'
         << r.q << '\n';
  return os.str();
}

std::string json_table(Parabolic q) {
  nlohmann::ordered_json doc;
  doc["schema"] = "gsp4/1";
  doc["q"] = parabolic_name(q);
  doc["tables"] = nlohmann::ordered_json::array();
  for (Parabolic sigma : kSigmaOrder) {
    nlohmann::ordered_json tab;
    tab["sigma"] = parabolic_name(sigma);
    tab["rows"] = nlohmann::ordered_json::array();
    for (const Row& r : rows_for(q, sigma))
      tab["rows"].push_back(
          {{"w", r.w}, {"q_prime", r.q_prime}, {"q", r.q}});
    doc["tables"].push_back(std::move(tab));
  }
  return doc.dump(2) + "\n";
}

}  // namespace gsp4::tables
