#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "cgdoi/instance.hpp"

namespace cgdoi {

// An assignment pattern: one facility serving a customer subset. Customers
// are kept sorted; the stored cost is f_i plus the assignment costs.
struct Column {
  int facility = -1;
  std::vector<int> customers;  // sorted, non-empty
  double cost = 0.0;

  bool covers(int u) const;
  bool operator==(const Column& other) const {
    return facility == other.facility && customers == other.customers;
  }
};

double column_cost(const Instance& instance, int facility,
                   const std::vector<int>& customers);
Column make_column(const Instance& instance, int facility,
                   std::vector<int> customers);
long column_demand(const Instance& instance, const Column& column);

// Ordered, de-duplicated column set (the restricted pool).
class ColumnPool {
 public:
  // Returns true if the column was new.
  bool insert(const Column& column);
  bool contains(const Column& column) const;
  std::size_t size() const { return columns_.size(); }
  const std::vector<Column>& columns() const { return columns_; }
  const Column& operator[](std::size_t k) const { return columns_[k]; }

 private:
  struct Key {
    std::size_t operator()(const Column& c) const;
  };
  std::vector<Column> columns_;
  std::unordered_map<Column, std::size_t, Key> index_;
};

}  // namespace cgdoi
