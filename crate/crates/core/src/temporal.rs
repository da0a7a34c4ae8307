//! Dates, tenors, day counts, calendars and coupon schedules.
//!
//! All date arithmetic in the crate funnels through this module so that
//! curve construction, instrument pricing and report generation agree on
//! the same conventions:
//!
//! * tenor addition clamps to month end (`2011-01-31 + 1M = 2011-02-28`),
//! * schedules are generated forward from the start date on a cumulative
//!   grid (`start + k * freq`), so month-end clamping cannot drift,
//! * day-based frequencies step over business days, not calendar days,
//! * a short final stub is appended when the frequency does not divide
//!   the interval exactly.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, Days, Months, Weekday};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Calendar date. ISO-8601 in all text formats.
pub type Date = chrono::NaiveDate;

/// Checked constructor for [`Date`].
pub fn date(year: i32, month: u32, day: u32) -> Result<Date> {
    Date::from_ymd_opt(year, month, day).ok_or(Error::InvalidDate { year, month, day })
}

// ---------------------------------------------------------------------------
// Tenor
// ---------------------------------------------------------------------------

/// Unit of a [`Tenor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TenorUnit {
    Day,
    Week,
    Month,
    Year,
}

impl TenorUnit {
    fn letter(self) -> char {
        match self {
            TenorUnit::Day => 'D',
            TenorUnit::Week => 'W',
            TenorUnit::Month => 'M',
            TenorUnit::Year => 'Y',
        }
    }

    fn rank(self) -> u8 {
        match self {
            TenorUnit::Day => 0,
            TenorUnit::Week => 1,
            TenorUnit::Month => 2,
            TenorUnit::Year => 3,
        }
    }
}

/// A market tenor such as `1D`, `2W`, `3M` or `10Y`.
///
/// Labels round-trip through [`FromStr`]/[`Display`](fmt::Display): `"3M"`
/// parses to three months and prints as `"3M"` again. Ordering follows the
/// approximate calendar length, so `1D < 1W < 1M < 3M < 6M < 12M < 2Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tenor {
    count: u32,
    unit: TenorUnit,
}

impl Tenor {
    pub fn new(count: u32, unit: TenorUnit) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidLabel {
                what: "tenor",
                text: format!("0{}", unit.letter()),
            });
        }
        Ok(Tenor { count, unit })
    }

    pub const fn days(count: u32) -> Self {
        Tenor { count, unit: TenorUnit::Day }
    }

    pub const fn weeks(count: u32) -> Self {
        Tenor { count, unit: TenorUnit::Week }
    }

    pub const fn months(count: u32) -> Self {
        Tenor { count, unit: TenorUnit::Month }
    }

    pub const fn years(count: u32) -> Self {
        Tenor { count, unit: TenorUnit::Year }
    }

    pub fn count(&self) -> u32 {
        self.count
    }

    pub fn unit(&self) -> TenorUnit {
        self.unit
    }

    /// Approximate length in calendar days; used only for ordering.
    pub fn approx_days(&self) -> u64 {
        let per_unit: u64 = match self.unit {
            TenorUnit::Day => 1,
            TenorUnit::Week => 7,
            TenorUnit::Month => 30,
            TenorUnit::Year => 365,
        };
        per_unit * u64::from(self.count)
    }

    /// A tenor scaled by an integer factor, e.g. `3M * 4 = 12M` (same unit).
    pub fn scaled(&self, k: u32) -> Self {
        Tenor { count: self.count * k, unit: self.unit }
    }

    /// True for the tenors a forward curve may carry: 1D, 1M, 3M, 6M, 12M.
    pub fn is_index_tenor(&self) -> bool {
        matches!(
            (self.count, self.unit),
            (1, TenorUnit::Day) | (1 | 3 | 6 | 12, TenorUnit::Month)
        )
    }
}

impl PartialOrd for Tenor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tenor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.approx_days(), self.unit.rank(), self.count).cmp(&(
            other.approx_days(),
            other.unit.rank(),
            other.count,
        ))
    }
}

impl fmt::Display for Tenor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.count, self.unit.letter())
    }
}

impl FromStr for Tenor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidLabel { what: "tenor", text: s.to_string() };
        let s = s.trim();
        if s.len() < 2 {
            return Err(bad());
        }
        let (digits, unit) = s.split_at(s.len() - 1);
        let count: u32 = digits.parse().map_err(|_| bad())?;
        let unit = match unit.chars().next().unwrap().to_ascii_uppercase() {
            'D' => TenorUnit::Day,
            'W' => TenorUnit::Week,
            'M' => TenorUnit::Month,
            'Y' => TenorUnit::Year,
            _ => return Err(bad()),
        };
        Tenor::new(count, unit)
    }
}

impl Serialize for Tenor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Tenor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Day counts
// ---------------------------------------------------------------------------

/// Accrual day-count conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DayCount {
    /// Actual days over 360. Standard for money-market and floating legs.
    Act360,
    /// Actual days over a fixed 365. Used for zero-rate quotation.
    Act365Fixed,
    /// European 30/360: both day numbers clamped to 30.
    Thirty360European,
}

impl fmt::Display for DayCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            DayCount::Act360 => "ACT/360",
            DayCount::Act365Fixed => "ACT/365F",
            DayCount::Thirty360European => "30E/360",
        };
        f.write_str(label)
    }
}

impl FromStr for DayCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "ACT/360" => Ok(DayCount::Act360),
            "ACT/365F" | "ACT/365" => Ok(DayCount::Act365Fixed),
            "30E/360" => Ok(DayCount::Thirty360European),
            _ => Err(Error::InvalidLabel { what: "day count", text: s.to_string() }),
        }
    }
}

/// Year fraction from `start` to `end` under `day_count`.
///
/// `end` must not precede `start`; `year_fraction(d, d, ..) == 0`.
pub fn year_fraction(start: Date, end: Date, day_count: DayCount) -> Result<f64> {
    if end < start {
        return Err(Error::DateOrder { first: start, second: end });
    }
    let yf = match day_count {
        DayCount::Act360 => (end - start).num_days() as f64 / 360.0,
        DayCount::Act365Fixed => (end - start).num_days() as f64 / 365.0,
        DayCount::Thirty360European => {
            let d1 = (start.day() as i64).min(30);
            let d2 = (end.day() as i64).min(30);
            let days = (end.year() as i64 - start.year() as i64) * 360
                + (end.month() as i64 - start.month() as i64) * 30
                + (d2 - d1);
            days as f64 / 360.0
        }
    };
    Ok(yf)
}

// ---------------------------------------------------------------------------
// Calendars and business-day adjustment
// ---------------------------------------------------------------------------

/// Rule for rolling a date that falls on a non-business day.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BusinessDayConvention {
    /// Next business day.
    Following,
    /// Next business day unless that crosses a month end, then previous.
    #[default]
    ModifiedFollowing,
    /// Leave the date untouched.
    Unadjusted,
}

impl fmt::Display for BusinessDayConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            BusinessDayConvention::Following => "following",
            BusinessDayConvention::ModifiedFollowing => "modified_following",
            BusinessDayConvention::Unadjusted => "unadjusted",
        };
        f.write_str(label)
    }
}

impl FromStr for BusinessDayConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "following" | "f" => Ok(BusinessDayConvention::Following),
            "modified_following" | "mf" => Ok(BusinessDayConvention::ModifiedFollowing),
            "unadjusted" | "none" => Ok(BusinessDayConvention::Unadjusted),
            _ => Err(Error::InvalidLabel { what: "business day convention", text: s.to_string() }),
        }
    }
}

/// Business-day calendar: Saturdays, Sundays and an explicit holiday list
/// are non-business days. The default calendar has no holidays.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Calendar {
    holidays: BTreeSet<Date>,
}

impl Calendar {
    /// Weekend-only calendar.
    pub fn weekends_only() -> Self {
        Calendar::default()
    }

    /// Weekend calendar extended with the given holidays.
    pub fn with_holidays<I: IntoIterator<Item = Date>>(holidays: I) -> Self {
        Calendar { holidays: holidays.into_iter().collect() }
    }

    pub fn holidays(&self) -> impl Iterator<Item = &Date> {
        self.holidays.iter()
    }

    pub fn is_business_day(&self, d: Date) -> bool {
        !matches!(d.weekday(), Weekday::Sat | Weekday::Sun) && !self.holidays.contains(&d)
    }

    /// First business day strictly after `d`.
    pub fn next_business_day(&self, d: Date) -> Date {
        let mut cur = d + Days::new(1);
        while !self.is_business_day(cur) {
            cur = cur + Days::new(1);
        }
        cur
    }

    /// First business day strictly before `d`.
    pub fn previous_business_day(&self, d: Date) -> Date {
        let mut cur = d - Days::new(1);
        while !self.is_business_day(cur) {
            cur = cur - Days::new(1);
        }
        cur
    }

    /// `d` advanced by `n` business days (`n == 0` returns `d`).
    pub fn add_business_days(&self, d: Date, n: u32) -> Date {
        let mut cur = d;
        for _ in 0..n {
            cur = self.next_business_day(cur);
        }
        cur
    }
}

/// Roll `d` onto a business day under the given convention.
///
/// Idempotent: adjusting an already adjusted date is a no-op.
pub fn adjust(d: Date, convention: BusinessDayConvention, calendar: &Calendar) -> Date {
    match convention {
        BusinessDayConvention::Unadjusted => d,
        BusinessDayConvention::Following => {
            if calendar.is_business_day(d) {
                d
            } else {
                calendar.next_business_day(d)
            }
        }
        BusinessDayConvention::ModifiedFollowing => {
            if calendar.is_business_day(d) {
                return d;
            }
            let rolled = calendar.next_business_day(d);
            if rolled.month() == d.month() {
                rolled
            } else {
                calendar.previous_business_day(d)
            }
        }
    }
}

/// `d` shifted by `tenor`. Month and year shifts clamp to the last day of
/// the target month; day and week shifts are plain calendar-day shifts.
pub fn add_tenor(d: Date, tenor: Tenor) -> Date {
    match tenor.unit {
        TenorUnit::Day => d + Days::new(u64::from(tenor.count)),
        TenorUnit::Week => d + Days::new(7 * u64::from(tenor.count)),
        TenorUnit::Month => d
            .checked_add_months(Months::new(tenor.count))
            .expect("date overflow in add_tenor"),
        TenorUnit::Year => d
            .checked_add_months(Months::new(12 * tenor.count))
            .expect("date overflow in add_tenor"),
    }
}

// ---------------------------------------------------------------------------
// Schedules
// ---------------------------------------------------------------------------

/// One accrual period of a schedule. Payment falls on the (business-day
/// adjusted) accrual end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchedulePeriod {
    pub accrual_start: Date,
    pub accrual_end: Date,
    pub pay_date: Date,
}

/// A contiguous sequence of accrual periods sharing one day count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    periods: Vec<SchedulePeriod>,
    day_count: DayCount,
}

impl Schedule {
    /// Builds a schedule from explicit periods, enforcing contiguity and
    /// strictly increasing accrual dates.
    pub fn from_periods(periods: Vec<SchedulePeriod>, day_count: DayCount) -> Result<Self> {
        if periods.is_empty() {
            return Err(Error::Schedule("schedule has no periods".into()));
        }
        for p in &periods {
            if p.accrual_end <= p.accrual_start {
                return Err(Error::Schedule(format!(
                    "period {} .. {} is not increasing",
                    p.accrual_start, p.accrual_end
                )));
            }
        }
        for w in periods.windows(2) {
            if w[1].accrual_start != w[0].accrual_end {
                return Err(Error::Schedule(format!(
                    "gap between {} and {}",
                    w[0].accrual_end, w[1].accrual_start
                )));
            }
        }
        Ok(Schedule { periods, day_count })
    }

    pub fn periods(&self) -> &[SchedulePeriod] {
        &self.periods
    }

    pub fn day_count(&self) -> DayCount {
        self.day_count
    }

    pub fn len(&self) -> usize {
        self.periods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.periods.is_empty()
    }

    /// First accrual start.
    pub fn start(&self) -> Date {
        self.periods[0].accrual_start
    }

    /// Last accrual end.
    pub fn end(&self) -> Date {
        self.periods[self.periods.len() - 1].accrual_end
    }

    /// Last payment date.
    pub fn final_pay_date(&self) -> Date {
        self.periods[self.periods.len() - 1].pay_date
    }

    /// Accrual year fraction of one period under the schedule day count.
    pub fn accrual(&self, period: &SchedulePeriod) -> Result<f64> {
        year_fraction(period.accrual_start, period.accrual_end, self.day_count)
    }
}

/// Generates the coupon schedule covering `[start, end)` at frequency
/// `freq`.
///
/// Month, week and year frequencies lay out an unadjusted grid
/// `start + k * freq` and then roll every grid date with `convention`;
/// a short final stub is added when the grid does not land on `end`
/// exactly. Day frequencies step `freq` business days at a time, so a
/// `1D` schedule has one period per business day.
pub fn generate_schedule(
    start: Date,
    end: Date,
    freq: Tenor,
    day_count: DayCount,
    convention: BusinessDayConvention,
    calendar: &Calendar,
) -> Result<Schedule> {
    if end <= start {
        return Err(Error::DateOrder { first: start, second: end });
    }

    let raw_dates = match freq.unit() {
        TenorUnit::Day => day_grid(start, end, freq.count(), convention, calendar),
        _ => {
            let grid = tenor_grid(start, end, freq)?;
            grid.into_iter().map(|d| adjust(d, convention, calendar)).collect()
        }
    };

    let mut dates = raw_dates;
    dates.dedup();
    if dates.len() < 2 {
        return Err(Error::Schedule(format!(
            "no periods between {start} and {end} at frequency {freq}"
        )));
    }

    let periods = dates
        .windows(2)
        .map(|w| SchedulePeriod {
            accrual_start: w[0],
            accrual_end: w[1],
            pay_date: adjust(w[1], convention, calendar),
        })
        .collect();
    Schedule::from_periods(periods, day_count)
}

/// Unadjusted cumulative grid `start + k * freq`, ending exactly at `end`
/// (stub rule: the last grid point is capped at `end`).
fn tenor_grid(start: Date, end: Date, freq: Tenor) -> Result<Vec<Date>> {
    const MAX_PERIODS: u32 = 200_000;
    let mut dates = vec![start];
    for k in 1.. {
        if k > MAX_PERIODS {
            return Err(Error::Schedule(format!(
                "more than {MAX_PERIODS} periods between {start} and {end}"
            )));
        }
        let g = add_tenor(start, freq.scaled(k));
        if g >= end {
            dates.push(end);
            break;
        }
        dates.push(g);
    }
    Ok(dates)
}

/// Business-day grid for day-based frequencies. The end point is the
/// adjusted `end`; if adjustment leaves `end` on a non-business day
/// (unadjusted convention) the final period is capped there.
fn day_grid(
    start: Date,
    end: Date,
    step: u32,
    convention: BusinessDayConvention,
    calendar: &Calendar,
) -> Vec<Date> {
    let target = adjust(end, convention, calendar);
    let target = if target > start { target } else { end };
    let mut dates = vec![start];
    let mut cur = start;
    while cur < target {
        let mut next = cur;
        for _ in 0..step {
            next = calendar.next_business_day(next);
        }
        if next > target {
            next = target;
        }
        dates.push(next);
        cur = next;
    }
    dates
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(y: i32, m: u32, dd: u32) -> Date {
        date(y, m, dd).unwrap()
    }

    #[test]
    fn rejects_impossible_dates() {
        assert!(date(2011, 2, 30).is_err());
        assert!(date(2011, 13, 1).is_err());
        assert!(date(2012, 2, 29).is_ok());
        assert!(date(2011, 2, 29).is_err());
    }

    #[test]
    fn act360_quarter() {
        let yf = year_fraction(d(2011, 6, 30), d(2011, 9, 28), DayCount::Act360).unwrap();
        assert_eq!(yf, 0.25);
    }

    #[test]
    fn act365f_leap_year_span() {
        let yf = year_fraction(d(2011, 6, 30), d(2012, 6, 30), DayCount::Act365Fixed).unwrap();
        assert_eq!(yf, 366.0 / 365.0);
    }

    #[test]
    fn thirty360e_clamps_day_31() {
        let yf =
            year_fraction(d(2011, 6, 30), d(2012, 6, 30), DayCount::Thirty360European).unwrap();
        assert_eq!(yf, 1.0);
        let yf =
            year_fraction(d(2011, 1, 31), d(2011, 2, 28), DayCount::Thirty360European).unwrap();
        assert_eq!(yf, 28.0 / 360.0);
        let yf =
            year_fraction(d(2011, 1, 31), d(2011, 3, 31), DayCount::Thirty360European).unwrap();
        assert_eq!(yf, 60.0 / 360.0);
    }

    #[test]
    fn year_fraction_rejects_reversed_dates() {
        assert!(year_fraction(d(2011, 7, 1), d(2011, 6, 30), DayCount::Act360).is_err());
        let zero = year_fraction(d(2011, 6, 30), d(2011, 6, 30), DayCount::Act360).unwrap();
        assert_eq!(zero, 0.0);
    }

    #[test]
    fn add_tenor_clamps_to_month_end() {
        assert_eq!(add_tenor(d(2011, 1, 31), Tenor::months(1)), d(2011, 2, 28));
        assert_eq!(add_tenor(d(2012, 1, 31), Tenor::months(1)), d(2012, 2, 29));
        // cumulative grid does not drift after a clamped month
        assert_eq!(add_tenor(d(2011, 1, 31), Tenor::months(2)), d(2011, 3, 31));
        assert_eq!(add_tenor(d(2011, 6, 30), Tenor::years(1)), d(2012, 6, 30));
        assert_eq!(add_tenor(d(2011, 6, 30), Tenor::days(1)), d(2011, 7, 1));
        assert_eq!(add_tenor(d(2011, 6, 30), Tenor::weeks(2)), d(2011, 7, 14));
    }

    #[test]
    fn adjust_following_rolls_over_weekend() {
        let cal = Calendar::weekends_only();
        // 2011-07-02 is a Saturday
        assert_eq!(adjust(d(2011, 7, 2), BusinessDayConvention::Following, &cal), d(2011, 7, 4));
        assert_eq!(adjust(d(2011, 7, 4), BusinessDayConvention::Following, &cal), d(2011, 7, 4));
    }

    #[test]
    fn adjust_modified_following_rolls_back_at_month_end() {
        let cal = Calendar::weekends_only();
        // 2011-07-31 is a Sunday; following would land in August
        assert_eq!(
            adjust(d(2011, 7, 31), BusinessDayConvention::ModifiedFollowing, &cal),
            d(2011, 7, 29)
        );
        assert_eq!(
            adjust(d(2011, 7, 2), BusinessDayConvention::ModifiedFollowing, &cal),
            d(2011, 7, 4)
        );
    }

    #[test]
    fn adjust_unadjusted_is_identity() {
        let cal = Calendar::weekends_only();
        assert_eq!(adjust(d(2011, 7, 2), BusinessDayConvention::Unadjusted, &cal), d(2011, 7, 2));
    }

    #[test]
    fn holiday_calendar_skips_listed_days() {
        let cal = Calendar::with_holidays([d(2011, 7, 6)]);
        assert!(!cal.is_business_day(d(2011, 7, 6)));
        assert_eq!(cal.next_business_day(d(2011, 7, 5)), d(2011, 7, 7));
        assert_eq!(cal.add_business_days(d(2011, 7, 5), 2), d(2011, 7, 8));
    }

    #[test]
    fn spot_lag_two_business_days() {
        let cal = Calendar::weekends_only();
        // 2011-06-30 is a Thursday: +2bd crosses the weekend
        assert_eq!(cal.add_business_days(d(2011, 6, 30), 2), d(2011, 7, 4));
        assert_eq!(cal.add_business_days(d(2011, 6, 30), 0), d(2011, 6, 30));
    }

    #[test]
    fn tenor_labels_parse_and_order() {
        let t: Tenor = "3M".parse().unwrap();
        assert_eq!(t, Tenor::months(3));
        assert_eq!("1y".parse::<Tenor>().unwrap(), Tenor::years(1));
        assert!("".parse::<Tenor>().is_err());
        assert!("M3".parse::<Tenor>().is_err());
        assert!("0M".parse::<Tenor>().is_err());
        assert!("3Q".parse::<Tenor>().is_err());

        let mut tenors = vec![
            Tenor::months(12),
            Tenor::days(1),
            Tenor::months(3),
            Tenor::months(1),
            Tenor::months(6),
        ];
        tenors.sort();
        assert_eq!(
            tenors,
            vec![
                Tenor::days(1),
                Tenor::months(1),
                Tenor::months(3),
                Tenor::months(6),
                Tenor::months(12),
            ]
        );
    }

    #[test]
    fn index_tenor_set() {
        for label in ["1D", "1M", "3M", "6M", "12M"] {
            assert!(label.parse::<Tenor>().unwrap().is_index_tenor(), "{label}");
        }
        for label in ["2D", "1W", "2M", "9M", "1Y", "24M"] {
            assert!(!label.parse::<Tenor>().unwrap().is_index_tenor(), "{label}");
        }
    }

    #[test]
    fn semiannual_year_has_two_periods() {
        let cal = Calendar::weekends_only();
        let s = generate_schedule(
            d(2011, 6, 30),
            add_tenor(d(2011, 6, 30), Tenor::years(1)),
            Tenor::months(6),
            DayCount::Act360,
            BusinessDayConvention::ModifiedFollowing,
            &cal,
        )
        .unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.start(), d(2011, 6, 30));
        assert_eq!(s.periods()[0].accrual_end, d(2011, 12, 30));
        assert_eq!(s.end(), d(2012, 6, 29)); // 2012-06-30 is a Saturday
    }

    #[test]
    fn fourteen_months_at_annual_frequency_leaves_two_month_stub() {
        let cal = Calendar::weekends_only();
        let start = d(2011, 6, 30);
        let end = add_tenor(start, Tenor::months(14));
        let s = generate_schedule(
            start,
            end,
            Tenor::months(12),
            DayCount::Act360,
            BusinessDayConvention::Unadjusted,
            &cal,
        )
        .unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.periods()[0].accrual_end, d(2012, 6, 30));
        assert_eq!(s.periods()[1].accrual_end, d(2012, 8, 30));
    }

    #[test]
    fn daily_schedule_steps_business_days() {
        let cal = Calendar::weekends_only();
        // Friday to the Thursday after the weekend: Fri, Mon, Tue, Wed, Thu
        let s = generate_schedule(
            d(2011, 7, 1),
            d(2011, 7, 7),
            Tenor::days(1),
            DayCount::Act360,
            BusinessDayConvention::ModifiedFollowing,
            &cal,
        )
        .unwrap();
        let ends: Vec<Date> = s.periods().iter().map(|p| p.accrual_end).collect();
        assert_eq!(ends, vec![d(2011, 7, 4), d(2011, 7, 5), d(2011, 7, 6), d(2011, 7, 7)]);
        for p in s.periods() {
            assert_eq!(p.pay_date, p.accrual_end);
        }
    }

    #[test]
    fn schedule_periods_are_contiguous_and_paid_on_adjusted_ends() {
        let cal = Calendar::weekends_only();
        let s = generate_schedule(
            d(2011, 7, 4),
            add_tenor(d(2011, 7, 4), Tenor::years(1)),
            Tenor::months(1),
            DayCount::Act360,
            BusinessDayConvention::ModifiedFollowing,
            &cal,
        )
        .unwrap();
        assert_eq!(s.len(), 12);
        for w in s.periods().windows(2) {
            assert_eq!(w[0].accrual_end, w[1].accrual_start);
        }
        for p in s.periods() {
            assert!(cal.is_business_day(p.pay_date));
            assert_eq!(p.pay_date, adjust(p.accrual_end, BusinessDayConvention::ModifiedFollowing, &cal));
        }
    }

    #[test]
    fn schedule_rejects_reversed_interval() {
        let cal = Calendar::weekends_only();
        assert!(generate_schedule(
            d(2011, 7, 4),
            d(2011, 7, 4),
            Tenor::months(1),
            DayCount::Act360,
            BusinessDayConvention::ModifiedFollowing,
            &cal,
        )
        .is_err());
    }

    fn arb_date() -> impl Strategy<Value = Date> {
        (2000i32..2040, 1u32..=12, 1u32..=28).prop_map(|(y, m, dd)| d(y, m, dd))
    }

    proptest! {
        #[test]
        fn act_year_fractions_are_additive(a in arb_date(), off1 in 0i64..2000, off2 in 0i64..2000) {
            let b = a + Days::new(off1 as u64);
            let c = b + Days::new(off2 as u64);
            for dc in [DayCount::Act360, DayCount::Act365Fixed] {
                let ab = year_fraction(a, b, dc).unwrap();
                let bc = year_fraction(b, c, dc).unwrap();
                let ac = year_fraction(a, c, dc).unwrap();
                prop_assert!((ab + bc - ac).abs() <= 1e-15 * (1.0 + ac.abs()));
            }
        }

        #[test]
        fn adjust_is_idempotent(a in arb_date()) {
            let cal = Calendar::weekends_only();
            for conv in [
                BusinessDayConvention::Following,
                BusinessDayConvention::ModifiedFollowing,
                BusinessDayConvention::Unadjusted,
            ] {
                let once = adjust(a, conv, &cal);
                prop_assert_eq!(adjust(once, conv, &cal), once);
            }
        }

        #[test]
        fn tenor_labels_round_trip(count in 1u32..600, unit_ix in 0usize..4) {
            let unit = [TenorUnit::Day, TenorUnit::Week, TenorUnit::Month, TenorUnit::Year][unit_ix];
            let t = Tenor::new(count, unit).unwrap();
            let back: Tenor = t.to_string().parse().unwrap();
            prop_assert_eq!(back, t);
        }

        #[test]
        fn exact_multiples_have_exact_period_counts(
            a in arb_date(),
            n in 1u32..40,
            months in prop::sample::select(vec![1u32, 3, 6, 12]),
        ) {
            let cal = Calendar::weekends_only();
            let freq = Tenor::months(months);
            let end = add_tenor(a, freq.scaled(n));
            let s = generate_schedule(a, end, freq, DayCount::Act360,
                BusinessDayConvention::ModifiedFollowing, &cal).unwrap();
            prop_assert_eq!(s.len(), n as usize);
        }

        #[test]
        fn daily_exact_multiples_have_exact_period_counts(a in arb_date(), n in 1u32..60) {
            let cal = Calendar::weekends_only();
            let start = adjust(a, BusinessDayConvention::Following, &cal);
            let end = cal.add_business_days(start, n);
            let s = generate_schedule(start, end, Tenor::days(1), DayCount::Act360,
                BusinessDayConvention::ModifiedFollowing, &cal).unwrap();
            prop_assert_eq!(s.len(), n as usize);
        }

        #[test]
        fn schedule_accruals_sum_to_full_interval(a in arb_date(), n in 1u32..40) {
            let cal = Calendar::weekends_only();
            let freq = Tenor::months(3);
            let end = add_tenor(a, freq.scaled(n));
            let s = generate_schedule(a, end, freq, DayCount::Act360,
                BusinessDayConvention::Unadjusted, &cal).unwrap();
            let total: f64 = s.periods().iter().map(|p| s.accrual(p).unwrap()).sum();
            let full = year_fraction(s.start(), s.end(), DayCount::Act360).unwrap();
            prop_assert!((total - full).abs() <= 1e-12 * (1.0 + full));
        }
    }
}
