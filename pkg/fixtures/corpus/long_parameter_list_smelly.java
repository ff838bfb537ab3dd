package corpus;

public class ShipmentPlanner {
    private int plannedCount;

    public int planShipment(int weightKg, int distanceKm, String carrierCode,
                            RouteProfile route, CustomsProfile customs,
                            InsuranceOption insurance, int insuranceTier) {
        int base = weightKg * distanceKm;
        int surcharge = route.tollEstimate() + customs.clearanceFee(carrierCode);
        plannedCount = plannedCount + 1;
        return base + surcharge + insurance.premiumFloor();
    }
}
