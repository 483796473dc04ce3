#include "supsom/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "supsom/errors.hpp"

namespace supsom {

namespace {

std::optional<long long> as_integer(const ClassLabel& label)
{
	long long value = 0;
	const char* first = label.data();
	const char* last = first + label.size();
	auto [ptr, ec] = std::from_chars(first, last, value);
	if (ec != std::errc{} || ptr != last)
		return std::nullopt;
	return value;
}

std::string_view trim(std::string_view s)
{
	const auto first = s.find_first_not_of(" \t\r");
	if (first == std::string_view::npos)
		return {};
	const auto last = s.find_last_not_of(" \t\r");
	return s.substr(first, last - first + 1);
}

// Splits one CSV record. Double-quoted fields may contain commas; "" inside
// quotes is a literal quote.
std::vector<std::string> split_record(std::string_view line)
{
	std::vector<std::string> fields;
	std::string field;
	bool quoted = false;
	for (std::size_t i = 0; i < line.size(); ++i)
	{
		const char c = line[i];
		if (quoted)
		{
			if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
			{
				field += '"';
				++i;
			}
			else if (c == '"')
				quoted = false;
			else
				field += c;
		}
		else if (c == '"')
			quoted = true;
		else if (c == ',')
		{
			fields.emplace_back(trim(field));
			field.clear();
		}
		else
			field += c;
	}
	fields.emplace_back(trim(field));
	return fields;
}

std::optional<double> parse_number(std::string_view text)
{
	if (!text.empty() && text.front() == '+')
		text.remove_prefix(1);
	double value = 0.0;
	auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
	if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
		return std::nullopt;
	return value;
}

std::string format_number(double value)
{
	char buffer[64];
	auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
	return std::string(buffer, ptr);
}

std::string quote_if_needed(const std::string& field)
{
	if (field.find_first_of(",\"") == std::string::npos)
		return field;
	std::string out = "\"";
	for (char c : field)
	{
		if (c == '"')
			out += '"';
		out += c;
	}
	return out + "\"";
}

} // namespace

bool class_less(const ClassLabel& a, const ClassLabel& b)
{
	const auto ia = as_integer(a);
	const auto ib = as_integer(b);
	if (ia && ib)
		return *ia < *ib;
	if (ia != ib && (ia || ib))
		return ia.has_value();
	return a < b;
}

std::vector<ClassLabel> class_set_of(std::span<const ClassLabel> labels)
{
	std::vector<ClassLabel> set(labels.begin(), labels.end());
	std::sort(set.begin(), set.end(), class_less);
	set.erase(std::unique(set.begin(), set.end()), set.end());
	return set;
}

std::string_view to_string(LabelKind kind)
{
	switch (kind)
	{
		case LabelKind::none: return "none";
		case LabelKind::continuous: return "continuous";
		case LabelKind::categorical: return "categorical";
	}
	return "unknown";
}

LabelKind parse_label_kind(std::string_view name)
{
	for (auto kind : {LabelKind::none, LabelKind::continuous, LabelKind::categorical})
		if (to_string(kind) == name)
			return kind;
	throw ValidationError{"unknown label kind '" + std::string{name} + "'"};
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const
{
	LabeledDataset out;
	out.label_kind = label_kind;
	out.feature_names = feature_names;
	out.features.resize(static_cast<Eigen::Index>(indices.size()), features.cols());
	for (std::size_t k = 0; k < indices.size(); ++k)
	{
		if (indices[k] >= size())
			throw ValidationError{"subset index " + std::to_string(indices[k]) + " out of range"};
		out.features.row(static_cast<Eigen::Index>(k)) = features.row(static_cast<Eigen::Index>(indices[k]));
		if (label_kind == LabelKind::continuous)
			out.targets.push_back(targets[indices[k]]);
		else if (label_kind == LabelKind::categorical)
			out.classes.push_back(classes[indices[k]]);
	}
	return out;
}

void LabeledDataset::validate() const
{
	if (label_kind == LabelKind::continuous && targets.size() != size())
		throw ValidationError{"number of regression targets does not match number of datapoints"};
	if (label_kind == LabelKind::categorical && classes.size() != size())
		throw ValidationError{"number of class labels does not match number of datapoints"};
	if (!feature_names.empty() && feature_names.size() != feature_dim())
		throw ValidationError{"number of feature names does not match feature dimension"};
	if (!features.allFinite())
		throw ValidationError{"dataset contains non-finite feature values"};
	if (label_kind == LabelKind::continuous)
		for (double y : targets)
			if (!std::isfinite(y))
				throw ValidationError{"dataset contains non-finite regression targets"};
}

LabeledDataset load_csv(const std::filesystem::path& path, const std::optional<std::string>& label_column, LabelKind label_kind)
{
	std::ifstream in{path};
	if (!in)
		throw DataError{"cannot open '" + path.string() + "'"};

	std::string line;
	if (!std::getline(in, line))
		throw DataError{"'" + path.string() + "' has no header row"};
	if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
		line.erase(0, 3);
	const std::vector<std::string> header = split_record(line);

	std::optional<std::size_t> label_index;
	if (label_column)
	{
		const auto it = std::find(header.begin(), header.end(), *label_column);
		if (it == header.end())
			throw DataError{"'" + path.string() + "' has no column named '" + *label_column + "'"};
		label_index = static_cast<std::size_t>(it - header.begin());
		if (label_kind == LabelKind::none)
			throw ValidationError{"a label column was given without a label kind"};
	}
	else if (label_kind != LabelKind::none)
		throw ValidationError{"label kind '" + std::string{to_string(label_kind)} + "' needs a label column"};

	LabeledDataset data;
	data.label_kind = label_column ? label_kind : LabelKind::none;
	for (std::size_t c = 0; c < header.size(); ++c)
		if (c != label_index)
			data.feature_names.push_back(header[c]);
	if (data.feature_names.empty())
		throw DataError{"'" + path.string() + "' has no feature columns"};

	std::vector<double> values;
	std::size_t rows = 0;
	while (std::getline(in, line))
	{
		if (trim(line).empty())
			continue;
		++rows;
		const std::vector<std::string> fields = split_record(line);
		if (fields.size() != header.size())
			throw DataError{path.string() + ": row " + std::to_string(rows) + " has " + std::to_string(fields.size()) + " fields, expected " +
			                std::to_string(header.size())};
		for (std::size_t c = 0; c < fields.size(); ++c)
		{
			if (c == label_index)
			{
				if (label_kind == LabelKind::categorical)
				{
					if (fields[c].empty())
						throw DataError{path.string() + ": row " + std::to_string(rows) + ", column '" + header[c] + "': empty class label"};
					data.classes.push_back(fields[c]);
				}
				else
				{
					const auto y = parse_number(fields[c]);
					if (!y || !std::isfinite(*y))
						throw DataError{path.string() + ": row " + std::to_string(rows) + ", column '" + header[c] + "': invalid target '" + fields[c] + "'"};
					data.targets.push_back(*y);
				}
				continue;
			}
			const auto v = parse_number(fields[c]);
			if (!v || !std::isfinite(*v))
				throw DataError{path.string() + ": row " + std::to_string(rows) + ", column '" + header[c] + "': invalid value '" + fields[c] + "'"};
			values.push_back(*v);
		}
	}
	if (rows == 0)
		throw DataError{"'" + path.string() + "' contains no datapoints"};

	const auto n = static_cast<Eigen::Index>(data.feature_names.size());
	data.features = Eigen::Map<const Matrix>(values.data(), static_cast<Eigen::Index>(rows), n);
	return data;
}

std::vector<std::string> csv_header(const std::filesystem::path& path)
{
	std::ifstream in{path};
	if (!in)
		throw DataError{"cannot open '" + path.string() + "'"};
	std::string line;
	if (!std::getline(in, line))
		throw DataError{"'" + path.string() + "' has no header row"};
	if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
		line.erase(0, 3);
	return split_record(line);
}

void write_csv(const std::filesystem::path& path, const LabeledDataset& data, const std::string& label_column)
{
	std::ofstream out{path};
	if (!out)
		throw DataError{"cannot write '" + path.string() + "'"};

	for (std::size_t c = 0; c < data.feature_dim(); ++c)
	{
		if (c)
			out << ',';
		out << quote_if_needed(data.feature_names.empty() ? "f" + std::to_string(c) : data.feature_names[c]);
	}
	if (data.label_kind != LabelKind::none)
		out << ',' << quote_if_needed(label_column);
	out << '\n';

	for (std::size_t i = 0; i < data.size(); ++i)
	{
		const auto row = data.row(i);
		for (std::size_t c = 0; c < row.size(); ++c)
		{
			if (c)
				out << ',';
			out << format_number(row[c]);
		}
		if (data.label_kind == LabelKind::continuous)
			out << ',' << format_number(data.targets[i]);
		else if (data.label_kind == LabelKind::categorical)
			out << ',' << quote_if_needed(data.classes[i]);
		out << '\n';
	}
	if (!out)
		throw DataError{"failed writing '" + path.string() + "'"};
}

LabeledDataset select_features(const LabeledDataset& data, std::span<const std::string> names)
{
	std::vector<Eigen::Index> columns;
	for (const auto& name : names)
	{
		const auto it = std::find(data.feature_names.begin(), data.feature_names.end(), name);
		if (it == data.feature_names.end())
			throw DataError{"dataset is missing feature column '" + name + "'"};
		columns.push_back(it - data.feature_names.begin());
	}

	LabeledDataset out = data;
	out.feature_names.assign(names.begin(), names.end());
	out.features.resize(data.features.rows(), static_cast<Eigen::Index>(columns.size()));
	for (std::size_t c = 0; c < columns.size(); ++c)
		out.features.col(static_cast<Eigen::Index>(c)) = data.features.col(columns[c]);
	return out;
}

IndexSplit train_test_split_indices(std::size_t n, double test_fraction, Rng& rng)
{
	if (n < 2)
		throw ValidationError{"a train/test split needs at least two datapoints"};
	if (!(test_fraction > 0.0 && test_fraction < 1.0))
		throw ValidationError{"test fraction must lie in (0, 1)"};

	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), 0);
	for (std::size_t i = n - 1; i > 0; --i)
		std::swap(order[i], order[rng.index(i + 1)]);

	auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));
	n_test = std::clamp<std::size_t>(n_test, 1, n - 1);

	IndexSplit split;
	split.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
	split.train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
	std::sort(split.test.begin(), split.test.end());
	std::sort(split.train.begin(), split.train.end());
	return split;
}

std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& data, double test_fraction, Rng& rng)
{
	const IndexSplit split = train_test_split_indices(data.size(), test_fraction, rng);
	return {data.subset(split.train), data.subset(split.test)};
}

std::vector<IndexSplit> k_fold(std::size_t n, std::size_t k, Rng& rng)
{
	if (k < 2)
		throw ValidationError{"k-fold cross-validation needs k >= 2"};
	if (n < k)
		throw ValidationError{"k-fold cross-validation needs at least k datapoints"};

	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), 0);
	for (std::size_t i = n - 1; i > 0; --i)
		std::swap(order[i], order[rng.index(i + 1)]);

	std::vector<IndexSplit> folds(k);
	std::size_t begin = 0;
	for (std::size_t f = 0; f < k; ++f)
	{
		const std::size_t size = n / k + (f < n % k ? 1 : 0);
		std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(begin), order.begin() + static_cast<std::ptrdiff_t>(begin + size));
		std::sort(test.begin(), test.end());
		std::vector<bool> in_test(n, false);
		for (auto i : test)
			in_test[i] = true;
		for (std::size_t i = 0; i < n; ++i)
			if (!in_test[i])
				folds[f].train.push_back(i);
		folds[f].test = std::move(test);
		begin += size;
	}
	return folds;
}

Matrix ScalingRecord::apply(const Matrix& features) const
{
	if (static_cast<std::size_t>(features.cols()) != offset.size())
		throw ValidationError{"scaling record dimension does not match features"};
	Matrix out = features;
	for (Eigen::Index c = 0; c < out.cols(); ++c)
	{
		const auto k = static_cast<std::size_t>(c);
		if (range[k] > 0.0)
			out.col(c) = (out.col(c).array() - offset[k]) / range[k];
		else
			out.col(c).setZero();
	}
	return out;
}

Matrix ScalingRecord::inverse(const Matrix& scaled) const
{
	if (static_cast<std::size_t>(scaled.cols()) != offset.size())
		throw ValidationError{"scaling record dimension does not match features"};
	Matrix out = scaled;
	for (Eigen::Index c = 0; c < out.cols(); ++c)
	{
		const auto k = static_cast<std::size_t>(c);
		out.col(c) = out.col(c).array() * range[k] + offset[k];
	}
	return out;
}

std::pair<LabeledDataset, ScalingRecord> minmax_scale(const LabeledDataset& data)
{
	if (data.empty())
		throw DataError{"cannot scale an empty dataset"};
	ScalingRecord record;
	for (Eigen::Index c = 0; c < data.features.cols(); ++c)
	{
		const double lo = data.features.col(c).minCoeff();
		const double hi = data.features.col(c).maxCoeff();
		record.offset.push_back(lo);
		record.range.push_back(hi - lo);
	}
	LabeledDataset scaled = data;
	scaled.features = record.apply(data.features);
	return {std::move(scaled), std::move(record)};
}

LabeledDataset synthetic_regression(std::size_t n_samples, double noise, Rng& rng)
{
	if (n_samples == 0)
		throw ValidationError{"synthetic_regression needs at least one sample"};
	if (!(noise >= 0.0))
		throw ValidationError{"noise scale must be nonnegative"};

	LabeledDataset data;
	data.label_kind = LabelKind::continuous;
	data.feature_names = {"x0", "x1"};
	data.features.resize(static_cast<Eigen::Index>(n_samples), 2);
	data.targets.resize(n_samples);
	for (std::size_t i = 0; i < n_samples; ++i)
	{
		const double x0 = rng.uniform();
		const double x1 = rng.uniform();
		data.features(static_cast<Eigen::Index>(i), 0) = x0;
		data.features(static_cast<Eigen::Index>(i), 1) = x1;
		data.targets[i] = x0 + x1 + (noise > 0.0 ? noise * rng.normal() : 0.0);
	}
	return data;
}

LabeledDataset synthetic_blobs(std::size_t n_samples, std::size_t n_classes, double separation, Rng& rng, std::size_t n_features)
{
	if (n_samples == 0 || n_classes == 0 || n_features == 0)
		throw ValidationError{"synthetic_blobs needs positive sample, class and feature counts"};
	if (!(separation > 0.0))
		throw ValidationError{"blob separation must be positive"};

	LabeledDataset data;
	data.label_kind = LabelKind::categorical;
	for (std::size_t c = 0; c < n_features; ++c)
		data.feature_names.push_back("x" + std::to_string(c));
	data.features.resize(static_cast<Eigen::Index>(n_samples), static_cast<Eigen::Index>(n_features));
	for (std::size_t i = 0; i < n_samples; ++i)
	{
		const std::size_t label = i % n_classes;
		for (std::size_t c = 0; c < n_features; ++c)
		{
			const double centre = c == 0 ? static_cast<double>(label) * separation : 0.0;
			data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = centre + rng.normal();
		}
		data.classes.push_back(std::to_string(label));
	}
	return data;
}

std::vector<std::size_t> load_band_mask(const std::filesystem::path& path)
{
	std::ifstream in{path};
	if (!in)
		throw DataError{"cannot open band mask '" + path.string() + "'"};
	std::vector<std::size_t> bands;
	std::string line;
	std::size_t line_no = 0;
	while (std::getline(in, line))
	{
		++line_no;
		const auto text = trim(line);
		if (text.empty() || text.front() == '#')
			continue;
		std::size_t band = 0;
		auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), band);
		if (ec != std::errc{} || ptr != text.data() + text.size() || band == 0)
			throw DataError{path.string() + ": line " + std::to_string(line_no) + " is not a 1-based band index"};
		bands.push_back(band);
	}
	std::sort(bands.begin(), bands.end());
	bands.erase(std::unique(bands.begin(), bands.end()), bands.end());
	return bands;
}

LabeledDataset drop_bands(const LabeledDataset& data, std::span<const std::size_t> one_based_bands)
{
	std::vector<bool> drop(data.feature_dim(), false);
	for (auto band : one_based_bands)
	{
		if (band == 0 || band > data.feature_dim())
			throw ValidationError{"band " + std::to_string(band) + " is outside 1.." + std::to_string(data.feature_dim())};
		drop[band - 1] = true;
	}
	std::vector<std::string> keep;
	LabeledDataset named = data;
	if (named.feature_names.empty())
		for (std::size_t c = 0; c < data.feature_dim(); ++c)
			named.feature_names.push_back("band_" + std::to_string(c + 1));
	for (std::size_t c = 0; c < data.feature_dim(); ++c)
		if (!drop[c])
			keep.push_back(named.feature_names[c]);
	return select_features(named, keep);
}

} // namespace supsom
