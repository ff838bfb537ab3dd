package corpus;

public class RoyaltyCalculator {
    public double royaltyFor(ContractTerms terms) {
        double base = terms.baseRate() * terms.unitsSold();
        double bonus = terms.bonusRate() * terms.bonusUnits();
        double cap = terms.capAmount();
        double total = base + bonus;
        if (total > cap) {
            total = cap - terms.capDiscount();
        }
        return total;
    }
}
