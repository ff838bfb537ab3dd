package corpus;

public class OrderRecord {
    private int orderId;
    private String customerName;
    private double totalAmount;

    public int getOrderId() {
        return orderId;
    }

    public String getCustomerName() {
        return customerName;
    }

    public double getTotalAmount() {
        return totalAmount;
    }

    public void setTotalAmount(double amount) {
        totalAmount = amount;
    }
}

class OrderRecordPrinter {
    public String describeOrder(OrderRecord record) {
        return record.getOrderId() + " " + record.getCustomerName() + " " + record.getTotalAmount();
    }
}
