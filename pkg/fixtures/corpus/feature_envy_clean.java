package corpus;

public class MembershipFeeCalculator {
    private double annualFee;
    private double loyaltyDiscount;
    private int memberYears;

    public double feeFor(BillingCycle cycle) {
        double months = cycle.monthCount();
        double base = annualFee * months / 12.0;
        double discount = loyaltyDiscount * memberYears;
        if (discount > base) {
            discount = base;
        }
        return base - discount;
    }
}
