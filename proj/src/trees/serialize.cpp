#include "darkbanner/trees/serialize.hpp"

#include "darkbanner/core/error.hpp"

namespace darkbanner::trees {

namespace {

nlohmann::json node_to_json(const std::vector<TreeNode>& nodes, std::size_t idx) {
    const TreeNode& node = nodes[idx];
    nlohmann::json j;
    j["n"] = node.n_samples;
    if (node.feature >= 0) {
        j["feature"] = node.feature;
        j["threshold"] = node.threshold;
        j["left"] = node_to_json(nodes, static_cast<std::size_t>(node.left));
        j["right"] = node_to_json(nodes, static_cast<std::size_t>(node.right));
    } else if (!node.distribution.empty()) {
        j["distribution"] = node.distribution;
    } else {
        j["value"] = node.value;
    }
    return j;
}

int node_from_json(const nlohmann::json& j, std::vector<TreeNode>& nodes) {
    TreeNode node;
    node.n_samples = j.value("n", std::size_t{0});
    if (j.contains("feature")) {
        node.feature = j.at("feature").get<int>();
        node.threshold = j.at("threshold").get<double>();
        nodes.push_back(node);
        const int self = static_cast<int>(nodes.size() - 1);
        const int left = node_from_json(j.at("left"), nodes);
        const int right = node_from_json(j.at("right"), nodes);
        nodes[static_cast<std::size_t>(self)].left = left;
        nodes[static_cast<std::size_t>(self)].right = right;
        return self;
    }
    if (j.contains("distribution")) {
        node.distribution = j.at("distribution").get<std::vector<double>>();
    } else {
        node.value = j.at("value").get<double>();
    }
    nodes.push_back(node);
    return static_cast<int>(nodes.size() - 1);
}

}  // namespace

nlohmann::json tree_to_json(const DecisionTree& tree) {
    nlohmann::json j;
    j["mode"] = tree.mode() == DecisionTree::Mode::classification_gini ? "classification"
                                                                       : "regression";
    j["n_features"] = tree.n_features();
    if (tree.n_classes() > 0) j["n_classes"] = tree.n_classes();
    j["root"] = node_to_json(tree.nodes(), 0);
    return j;
}

DecisionTree tree_from_json(const nlohmann::json& j) {
    std::vector<TreeNode> nodes;
    node_from_json(j.at("root"), nodes);
    const auto mode = j.at("mode").get<std::string>() == "classification"
                          ? DecisionTree::Mode::classification_gini
                          : DecisionTree::Mode::regression_mse;
    return DecisionTree::from_parts(mode, j.at("n_features").get<std::size_t>(),
                                    j.value("n_classes", 0), std::move(nodes));
}

nlohmann::json gbt_to_json(const GbtModel& model) {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = "gbt";
    j["classes"] = model.classes;
    j["priors"] = model.priors;
    j["initial_scores"] = model.initial_scores;
    j["learning_rate"] = model.learning_rate;
    j["n_estimators"] = model.n_estimators;
    j["max_depth"] = model.max_depth;
    j["min_samples_leaf"] = model.min_samples_leaf;
    j["n_features"] = model.n_features;
    j["degenerate"] = model.degenerate;
    j["train_deviance"] = model.train_deviance;
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& stage : model.stages) {
        nlohmann::json trees = nlohmann::json::array();
        for (const auto& tree : stage) trees.push_back(tree_to_json(tree));
        stages.push_back(std::move(trees));
    }
    j["stages"] = std::move(stages);
    return j;
}

GbtModel gbt_from_json(const nlohmann::json& j) {
    if (j.value("format_version", -1) != kModelFormatVersion) {
        throw ParseError("unsupported model format version");
    }
    GbtModel model;
    model.classes = j.at("classes").get<std::vector<int>>();
    model.priors = j.at("priors").get<std::vector<double>>();
    model.initial_scores = j.at("initial_scores").get<std::vector<double>>();
    model.learning_rate = j.at("learning_rate").get<double>();
    model.n_estimators = j.at("n_estimators").get<int>();
    model.max_depth = j.at("max_depth").get<int>();
    model.min_samples_leaf = j.at("min_samples_leaf").get<int>();
    model.n_features = j.at("n_features").get<std::size_t>();
    model.degenerate = j.at("degenerate").get<bool>();
    model.train_deviance = j.at("train_deviance").get<std::vector<double>>();
    for (const auto& stage : j.at("stages")) {
        std::vector<DecisionTree> trees;
        for (const auto& tree : stage) trees.push_back(tree_from_json(tree));
        model.stages.push_back(std::move(trees));
    }
    return model;
}

}  // namespace darkbanner::trees
