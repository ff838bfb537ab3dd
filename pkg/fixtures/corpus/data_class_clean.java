package corpus;

public class InvoiceRecord {
    private int invoiceId;
    private double baseAmount;
    private double taxRate;

    public int getInvoiceId() {
        return invoiceId;
    }

    public double getBaseAmount() {
        return baseAmount;
    }

    public void setBaseAmount(double amount) {
        baseAmount = amount;
    }

    public double computeTotalDue() {
        double tax = baseAmount * taxRate;
        return baseAmount + tax;
    }

    public boolean matchesInvoice(int candidateId) {
        return invoiceId == candidateId;
    }
}

class InvoiceAuditor {
    public boolean auditInvoice(InvoiceRecord invoice) {
        return invoice.computeTotalDue() > 0.0;
    }
}
