#pragma once

#include "forestacc/error.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace forestacc {

/// Dense row-major matrix. Sizes here are sociometric groups (tens to a few
/// thousand vertices), so there is no blocking or expression templates.
template <typename T>
class BasicMatrix
{
public:
	using value_type = T;

	BasicMatrix() = default;

	BasicMatrix(std::size_t rows, std::size_t cols, T fill = T{})
	  : rows_(rows)
	  , cols_(cols)
	  , data_(rows * cols, fill)
	{
	}

	BasicMatrix(std::initializer_list<std::initializer_list<T>> init)
	  : rows_(init.size())
	  , cols_(init.size() == 0 ? 0 : init.begin()->size())
	{
		data_.reserve(rows_ * cols_);
		for (const auto& row : init) {
			if (row.size() != cols_)
				throw Error(ErrorCode::InvalidArgument, "ragged matrix initializer");
			data_.insert(data_.end(), row.begin(), row.end());
		}
	}

	static BasicMatrix identity(std::size_t n)
	{
		BasicMatrix m(n, n);
		for (std::size_t i = 0; i < n; ++i)
			m(i, i) = T{1};
		return m;
	}

	std::size_t rows() const noexcept { return rows_; }
	std::size_t cols() const noexcept { return cols_; }
	bool square() const noexcept { return rows_ == cols_; }

	T& operator()(std::size_t i, std::size_t j) noexcept
	{
		assert(i < rows_ && j < cols_);
		return data_[i * cols_ + j];
	}
	const T& operator()(std::size_t i, std::size_t j) const noexcept
	{
		assert(i < rows_ && j < cols_);
		return data_[i * cols_ + j];
	}

	std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
	std::span<const T> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

	std::span<const T> data() const noexcept { return data_; }

	BasicMatrix transposed() const
	{
		BasicMatrix t(cols_, rows_);
		for (std::size_t i = 0; i < rows_; ++i)
			for (std::size_t j = 0; j < cols_; ++j)
				t(j, i) = (*this)(i, j);
		return t;
	}

	BasicMatrix& operator+=(const BasicMatrix& o)
	{
		check_same_shape(o);
		for (std::size_t k = 0; k < data_.size(); ++k)
			data_[k] += o.data_[k];
		return *this;
	}
	BasicMatrix& operator-=(const BasicMatrix& o)
	{
		check_same_shape(o);
		for (std::size_t k = 0; k < data_.size(); ++k)
			data_[k] -= o.data_[k];
		return *this;
	}
	BasicMatrix& operator*=(T s) noexcept
	{
		for (auto& x : data_)
			x *= s;
		return *this;
	}

	friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
	friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
	friend BasicMatrix operator*(BasicMatrix a, T s) { return a *= s; }
	friend BasicMatrix operator*(T s, BasicMatrix a) { return a *= s; }

	friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b)
	{
		if (a.cols_ != b.rows_)
			throw Error(ErrorCode::InvalidArgument, "matrix product shape mismatch");
		BasicMatrix c(a.rows_, b.cols_);
		for (std::size_t i = 0; i < a.rows_; ++i)
			for (std::size_t k = 0; k < a.cols_; ++k) {
				const T aik = a(i, k);
				if (aik == T{})
					continue;
				for (std::size_t j = 0; j < b.cols_; ++j)
					c(i, j) += aik * b(k, j);
			}
		return c;
	}

	friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

private:
	void check_same_shape(const BasicMatrix& o) const
	{
		if (rows_ != o.rows_ || cols_ != o.cols_)
			throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
	}

	std::size_t rows_ = 0;
	std::size_t cols_ = 0;
	std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;

/// Induced infinity norm (maximum absolute row sum).
template <typename T>
T norm_inf(const BasicMatrix<T>& m)
{
	T best{};
	for (std::size_t i = 0; i < m.rows(); ++i) {
		T s{};
		for (T x : m.row(i))
			s += std::abs(x);
		best = std::max(best, s);
	}
	return best;
}

/// Induced 1-norm (maximum absolute column sum).
template <typename T>
T norm_1(const BasicMatrix<T>& m)
{
	T best{};
	for (std::size_t j = 0; j < m.cols(); ++j) {
		T s{};
		for (std::size_t i = 0; i < m.rows(); ++i)
			s += std::abs(m(i, j));
		best = std::max(best, s);
	}
	return best;
}

template <typename T>
T max_abs_diff(const BasicMatrix<T>& a, const BasicMatrix<T>& b)
{
	if (a.rows() != b.rows() || a.cols() != b.cols())
		throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
	T best{};
	auto x = a.data();
	auto y = b.data();
	for (std::size_t k = 0; k < x.size(); ++k)
		best = std::max(best, std::abs(x[k] - y[k]));
	return best;
}

/// Copy of `m` with row `skip_row` and column `skip_col` removed.
template <typename T>
BasicMatrix<T> minor_matrix(const BasicMatrix<T>& m, std::size_t skip_row, std::size_t skip_col)
{
	BasicMatrix<T> out(m.rows() - 1, m.cols() - 1);
	for (std::size_t i = 0, oi = 0; i < m.rows(); ++i) {
		if (i == skip_row)
			continue;
		for (std::size_t j = 0, oj = 0; j < m.cols(); ++j) {
			if (j == skip_col)
				continue;
			out(oi, oj++) = m(i, j);
		}
		++oi;
	}
	return out;
}

/// LU factorization with partial (row) pivoting, PA = LU, packed in place.
/// A zero pivot marks the matrix singular; the determinant is then exactly 0.
template <typename T>
class LuDecomposition
{
public:
	explicit LuDecomposition(BasicMatrix<T> a)
	  : lu_(std::move(a))
	  , perm_(lu_.rows())
	{
		if (!lu_.square())
			throw Error(ErrorCode::InvalidArgument, "LU of a non-square matrix");
		const std::size_t n = lu_.rows();
		for (std::size_t i = 0; i < n; ++i)
			perm_[i] = i;

		for (std::size_t col = 0; col < n; ++col) {
			std::size_t pivot = col;
			T best = std::abs(lu_(col, col));
			for (std::size_t r = col + 1; r < n; ++r) {
				if (std::abs(lu_(r, col)) > best) {
					best = std::abs(lu_(r, col));
					pivot = r;
				}
			}
			if (best == T{}) {
				singular_ = true;
				continue;
			}
			if (pivot != col) {
				std::swap_ranges(lu_.row(col).begin(), lu_.row(col).end(), lu_.row(pivot).begin());
				std::swap(perm_[col], perm_[pivot]);
				sign_ = -sign_;
			}
			const T diag = lu_(col, col);
			for (std::size_t r = col + 1; r < n; ++r) {
				const T factor = lu_(r, col) / diag;
				lu_(r, col) = factor;
				if (factor == T{})
					continue;
				for (std::size_t c = col + 1; c < n; ++c)
					lu_(r, c) -= factor * lu_(col, c);
			}
		}
	}

	std::size_t size() const noexcept { return lu_.rows(); }
	bool singular() const noexcept { return singular_; }

	T determinant() const noexcept
	{
		if (singular_)
			return T{};
		T det = static_cast<T>(sign_);
		for (std::size_t i = 0; i < lu_.rows(); ++i)
			det *= lu_(i, i);
		return det;
	}

	/// Solves A X = B column by column.
	BasicMatrix<T> solve(const BasicMatrix<T>& b) const
	{
		if (singular_)
			throw Error(ErrorCode::SingularMatrix, "zero pivot in LU factorization");
		const std::size_t n = lu_.rows();
		if (b.rows() != n)
			throw Error(ErrorCode::InvalidArgument, "right-hand side has wrong row count");
		BasicMatrix<T> x(n, b.cols());
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < b.cols(); ++j)
				x(i, j) = b(perm_[i], j);

		for (std::size_t j = 0; j < b.cols(); ++j) {
			for (std::size_t i = 1; i < n; ++i) {
				T s = x(i, j);
				for (std::size_t k = 0; k < i; ++k)
					s -= lu_(i, k) * x(k, j);
				x(i, j) = s;
			}
			for (std::size_t i = n; i-- > 0;) {
				T s = x(i, j);
				for (std::size_t k = i + 1; k < n; ++k)
					s -= lu_(i, k) * x(k, j);
				x(i, j) = s / lu_(i, i);
			}
		}
		return x;
	}

	BasicMatrix<T> inverse() const { return solve(BasicMatrix<T>::identity(lu_.rows())); }

private:
	BasicMatrix<T> lu_;
	std::vector<std::size_t> perm_;
	int sign_ = 1;
	bool singular_ = false;
};

template <typename T>
T determinant(const BasicMatrix<T>& m)
{
	if (m.rows() == 0)
		return T{1};
	return LuDecomposition<T>(m).determinant();
}

} // namespace forestacc
