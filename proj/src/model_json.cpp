#include "binwise/model_json.hpp"

#include "binwise/errors.hpp"

#include <json.hpp>

namespace binwise {

namespace {

using nlohmann::json;

BigInt number_field(const json& obj, const char* key)
{
    if (!obj.contains(key))
        throw InvalidModel(std::string("missing field '") + key + "'");
    const json& v = obj.at(key);
    try {
        if (v.is_string())
            return parse_integer(v.get<std::string>());
        if (v.is_number_unsigned())
            return BigInt(std::to_string(v.get<std::uint64_t>()));
        if (v.is_number_integer())
            return BigInt(std::to_string(v.get<std::int64_t>()));
    } catch (const std::invalid_argument& e) {
        throw InvalidModel(std::string("field '") + key + "': " + e.what());
    }
    throw InvalidModel(std::string("field '") + key + "' must be an integer or decimal string");
}

}  // namespace

std::string model_to_json(const PartitionModel& model, int indent)
{
    json parts = json::array();
    for (const Partition& p : model.partitions())
        parts.push_back({{"id", p.id}, {"capacity", to_decimal(p.capacity)}, {"count", to_decimal(p.count)}});
    json doc;
    doc["partitions"] = std::move(parts);
    doc["total_count"] = to_decimal(model.total_count());
    doc["total_capacity"] = to_decimal(model.total_capacity());
    return doc.dump(indent);
}

PartitionModel model_from_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidModel(std::string("model json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("partitions") || !doc.at("partitions").is_array())
        throw InvalidModel("model json needs a 'partitions' array");

    std::vector<Partition> parts;
    for (const json& entry : doc.at("partitions")) {
        if (!entry.is_object() || !entry.contains("id") || !entry.at("id").is_string())
            throw InvalidModel("each partition needs a string 'id'");
        parts.push_back({entry.at("id").get<std::string>(), number_field(entry, "capacity"),
                         number_field(entry, "count")});
    }
    PartitionModel model = doc.contains("total_capacity")
                               ? PartitionModel(std::move(parts), number_field(doc, "total_capacity"))
                               : PartitionModel(std::move(parts));
    if (doc.contains("total_count") && number_field(doc, "total_count") != model.total_count())
        throw InvalidModel("total_count does not match the partition counts");
    return model;
}

}  // namespace binwise
