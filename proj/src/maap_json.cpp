#include "maap/maap_json.hpp"

#include <json.hpp>

namespace maap {

using Json = nlohmann::ordered_json;

namespace {

Json rational_to_json(const Rational& r) {
    std::string s = r.str();
    auto slash = s.find('/');
    return Json{{"num", s.substr(0, slash)}, {"den", s.substr(slash + 1)}};
}

Rational rational_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw ParseError("rational must be an object with num/den strings");
    return Rational::from_string(j.at("num").get<std::string>() + "/" +
                                 j.at("den").get<std::string>());
}

Json expr_to_json(const AffineExpr& e) {
    Json terms = Json::array();
    for (const auto& t : e.terms())
        terms.push_back(Json{{"coef", rational_to_json(t.coef)}, {"var", t.var}});
    return Json{{"const", rational_to_json(e.constant_part())}, {"terms", std::move(terms)}};
}

AffineExpr expr_from_json(const Json& j) {
    std::vector<AffineTerm> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({rational_from_json(t.at("coef")), t.at("var").get<VarId>()});
    return AffineExpr(rational_from_json(j.at("const")), std::move(terms));
}

Json instr_to_json(const Instruction& ins) {
    switch (ins.kind) {
        case InstrKind::Affine:
            return Json{{"kind", "affine"},
                        {"target", ins.target},
                        {"expr", expr_to_json(ins.exprs.front())}};
        case InstrKind::Max:
        case InstrKind::Min: {
            Json terms = Json::array();
            for (const auto& e : ins.exprs) terms.push_back(expr_to_json(e));
            return Json{{"kind", ins.kind == InstrKind::Max ? "max" : "min"},
                        {"target", ins.target},
                        {"terms", std::move(terms)}};
        }
        case InstrKind::Seq:
        case InstrKind::ForDo: {
            Json items = Json::array();
            for (const auto& c : ins.children) items.push_back(instr_to_json(unroll_instr(c)));
            return Json{{"kind", "seq"}, {"items", std::move(items)}};
        }
        case InstrKind::Par:
        case InstrKind::ForDoPar: {
            Json blocks = Json::array();
            for (const auto& c : ins.children) blocks.push_back(instr_to_json(unroll_instr(c)));
            Json locals = Json::array();
            for (std::size_t i = 0; i < ins.children.size(); ++i) {
                Json ls = Json::array();
                if (i < ins.block_locals.size())
                    for (VarId v : ins.block_locals[i]) ls.push_back(v);
                locals.push_back(std::move(ls));
            }
            return Json{{"kind", "par"}, {"blocks", std::move(blocks)}, {"locals", std::move(locals)}};
        }
    }
    throw Error("unreachable instruction kind");
}

Instruction instr_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "affine") {
        return assign(j.at("target").get<VarId>(), expr_from_json(j.at("expr")));
    }
    if (kind == "max" || kind == "min") {
        std::vector<AffineExpr> terms;
        for (const auto& t : j.at("terms")) terms.push_back(expr_from_json(t));
        // Bypass builder normalization: a malformed document with too few
        // terms must surface as a validation arity violation, not mutate.
        Instruction ins;
        ins.kind = kind == "max" ? InstrKind::Max : InstrKind::Min;
        ins.target = j.at("target").get<VarId>();
        ins.exprs = std::move(terms);
        return ins;
    }
    if (kind == "seq") {
        std::vector<Instruction> items;
        for (const auto& c : j.at("items")) items.push_back(instr_from_json(c));
        return seq(std::move(items));
    }
    if (kind == "par") {
        std::vector<Instruction> blocks;
        for (const auto& c : j.at("blocks")) blocks.push_back(instr_from_json(c));
        std::vector<std::vector<VarId>> locals;
        if (j.contains("locals"))
            for (const auto& ls : j.at("locals"))
                locals.push_back(ls.get<std::vector<VarId>>());
        if (!locals.empty() && locals.size() != blocks.size())
            throw ParseError("locals array must match block count");
        return par(std::move(blocks), std::move(locals));
    }
    throw ParseError("unknown instruction kind '" + kind + "'");
}

}  // namespace

std::string maap_to_json(const MaapProgram& p) {
    Json j{{"inputs", p.inputs}, {"outputs", p.outputs}, {"body", instr_to_json(p.body)}};
    return j.dump(2) + "\n";
}

MaapProgram maap_from_json(const std::string& doc) {
    Json j;
    try {
        j = Json::parse(doc);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("maap json: ") + e.what());
    }
    try {
        MaapProgram p;
        p.inputs = j.at("inputs").get<std::vector<VarId>>();
        p.outputs = j.at("outputs").get<std::vector<VarId>>();
        p.body = instr_from_json(j.at("body"));
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("maap json: ") + e.what());
    }
}

}  // namespace maap
