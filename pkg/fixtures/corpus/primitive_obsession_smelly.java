package corpus;

public class CustomerProfile {
    private String streetName;
    private String streetNumber;
    private String cityName;
    private String postalCode;
    private String phoneCountryCode;
    private String phoneAreaCode;
    private String phoneLocalNumber;
    private int loyaltyPoints;

    public String mailingLabel() {
        String streetLine = streetName + " " + streetNumber;
        String cityLine = postalCode + " " + cityName;
        return streetLine + "\n" + cityLine;
    }

    public String dialablePhone() {
        return phoneCountryCode + phoneAreaCode + phoneLocalNumber;
    }

    public void awardPoints(int points) {
        loyaltyPoints = loyaltyPoints + points;
    }
}
