#pragma once

#include "ainf/funcat.hpp"
#include "ainf/presented.hpp"
#include "ainf/quiver.hpp"
#include "ainf/resolution.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <string>

namespace ainf::io {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

json ring_to_json(const Ring& r);
Ring ring_from_json(const json& j);

json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

// Elements are lists of [name, coefficient] in basis order.
json elem_to_json(const Category& c, const Elem& e);
Elem elem_from_json(const Category& c, const json& j);

json category_to_json(const PresentedCategory& c);
json quiver_to_json(const DGQuiver& q);

// Components of a functor with a finite source: all composable tuples up to
// the component bound (or max_arity for unbounded functors).
json functor_to_json(const Functor& f, const json& source, const json& target, int max_arity = 4);
json prenatural_to_json(const Prenatural& t, const json& f, const json& g);
json tower_to_json(const ResolutionTower& t, const json& target);
json certificate_to_json(const SemifreeCertificate& c, const ResolutionTower& t);

json document(const Ring& r, const std::string& kind, json body);
// Checks schema_version, ring and the presence of exactly one known kind;
// returns the body of the expected kind.
const json& body(const json& doc, const std::string& kind);
std::string dump(const json& j);

// Builds objects from documents; identical category bodies share one instance
// so functors between them compose.
class Loader {
public:
    explicit Loader(Ring r) : ring_(r) {}
    const Ring& ring() const { return ring_; }

    std::shared_ptr<PresentedCategory> category(const json& body);
    DGQuiver quiver(const json& body) const;
    std::shared_ptr<TableFunctor> functor(const json& body);
    Prenatural prenatural(const json& body);
    ResolutionTower tower(const json& body);
    std::vector<Elem> relations(const Category& c, const json& body) const;

private:
    Ring ring_;
    std::map<std::string, std::shared_ptr<PresentedCategory>> cats_;
};

json read_file(const std::string& path);

} // namespace ainf::io
