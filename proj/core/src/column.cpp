#include "cgdoi/column.hpp"

#include <algorithm>
#include <stdexcept>

namespace cgdoi {

bool Column::covers(int u) const {
  return std::binary_search(customers.begin(), customers.end(), u);
}

double column_cost(const Instance& instance, int facility,
                   const std::vector<int>& customers) {
  double c = instance.facilities[facility].fixed_cost;
  for (int u : customers) c += instance.cost[facility][u];
  return c;
}

Column make_column(const Instance& instance, int facility,
                   std::vector<int> customers) {
  if (facility < 0 || facility >= instance.num_facilities()) {
    throw std::invalid_argument("facility index out of range");
  }
  if (customers.empty()) {
    throw std::invalid_argument("column must cover at least one customer");
  }
  std::sort(customers.begin(), customers.end());
  if (std::adjacent_find(customers.begin(), customers.end()) != customers.end()) {
    throw std::invalid_argument("duplicate customer in column");
  }
  if (customers.front() < 0 || customers.back() >= instance.num_customers()) {
    throw std::invalid_argument("customer index out of range");
  }
  Column col;
  col.facility = facility;
  col.customers = std::move(customers);
  col.cost = column_cost(instance, facility, col.customers);
  return col;
}

long column_demand(const Instance& instance, const Column& column) {
  long d = 0;
  for (int u : column.customers) d += instance.demands[u];
  return d;
}

std::size_t ColumnPool::Key::operator()(const Column& c) const {
  std::size_t h = static_cast<std::size_t>(c.facility) * 0x9E3779B97F4A7C15ULL;
  for (int u : c.customers) {
    h ^= static_cast<std::size_t>(u) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool ColumnPool::insert(const Column& column) {
  auto [it, fresh] = index_.emplace(column, columns_.size());
  if (fresh) columns_.push_back(column);
  return fresh;
}

bool ColumnPool::contains(const Column& column) const {
  return index_.count(column) > 0;
}

}  // namespace cgdoi
